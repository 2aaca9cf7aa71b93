#pragma once

#include <array>
#include <cstdint>

namespace curvball {

// Identifies one reproducible random stream: identical (seed, stream_id)
// always yields the identical sequence.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  // Deterministic, well-mixed sub-stream; used to hand out disjoint streams
  // to trials, chunks and workers.
  RngSpec child(std::uint64_t index) const;

  friend bool operator==(const RngSpec&, const RngSpec&) = default;
};

// Philox4x32-10 block: key = seed, counter = (position, stream_id).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

std::uint64_t splitmix64(std::uint64_t x);

// Sequential view over a counter-based stream. Copying a RandomStream copies
// its position.
class RandomStream {
 public:
  explicit RandomStream(const RngSpec& spec) : spec_(spec) {}

  std::uint64_t next_u64();
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Uniform in (0, 1]; safe argument for log().
  double uniform_pos();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  const RngSpec& spec() const { return spec_; }
  std::uint64_t position() const { return position_; }

 private:
  RngSpec spec_;
  std::uint64_t position_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  bool have_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace curvball
