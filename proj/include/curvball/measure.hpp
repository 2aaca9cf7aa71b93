#pragma once

#include <cstdint>
#include <vector>

#include "curvball/geom_core.hpp"
#include "curvball/rng.hpp"
#include "curvball/set_oracle.hpp"

namespace curvball {

// Volume of the Euclidean unit ball, pi^{d/2} / Gamma(d/2 + 1).
double unit_ball_volume(int d);

// Volume of a geodesic ball of radius r. Flat: omega_d r^d. Curved: adaptive
// Gauss-Kronrod quadrature of d omega_d int_0^r sin^{d-1} (sinh^{d-1}).
double ball_volume(const Space& s, double r);
double ball_volume(const Space& s, const Ball& b);

// d/dr ball_volume(s, r): the area of the geodesic sphere of radius r.
double sphere_area(const Space& s, double r);

// Volume of S^d; +inf for the non-compact spaces.
double total_volume(const Space& s);

// Radius r with ball_volume(s, r) == v (bisection, then Newton polish).
double ball_volume_inverse(const Space& s, double v);

struct MuSolution {
  bool saturated = false;  // N balls of radius lambda/2 exceed the whole sphere
  double mu = 0.0;
  double target_volume = 0.0;  // N * ball_volume(lambda / 2)
};

// Radius mu of the ball whose volume equals N balls of radius lambda/2.
MuSolution mu_solve(const Space& s, long long n, double lambda);

// Uniform sampler on a fixed geodesic ball. Radial inverse CDF is a cubic
// Hermite table of the cumulative volume with exact node derivatives.
class BallSampler {
 public:
  BallSampler(const Space& s, const Ball& ball);

  Point sample(RandomStream& rng) const;
  const Ball& ball() const { return ball_; }
  double volume() const { return volume_; }

 private:
  double sample_radius(double u) const;

  Space space_;
  Ball ball_;
  double volume_ = 0.0;
  double step_ = 0.0;
  std::vector<double> cumulative_;  // integral of the radial density up to node i
  std::vector<double> density_;     // radial density at node i
};

// One point drawn from the stream identified by rng.
Point sample_uniform_ball(const Space& s, const Point& c, double r, const RngSpec& rng);

struct VolumeEstimate {
  double value = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t hits = 0;
  double std_err = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double sampling_ball_volume = 0.0;

  double upper(double sigmas) const { return value + sigmas * std_err; }
  double lower(double sigmas) const { return value - sigmas * std_err; }
};

// Samples per independent chunk; chunk i draws from rng.child(i), so the
// estimate does not depend on how chunks are spread across workers.
inline constexpr std::uint64_t kChunkSamples = 1u << 14;

// Hit-or-miss estimate of vol(K) using uniform samples from s_ball, which the
// caller certifies to contain K. Throws BoundViolation if a hit lands outside
// K.bound().
VolumeEstimate estimate_volume(const SetOracle& k, const Ball& s_ball, std::uint64_t n,
                               const RngSpec& rng);
// Samples from K's own bounding ball.
VolumeEstimate estimate_volume(const SetOracle& k, std::uint64_t n, const RngSpec& rng);

VolumeEstimate make_estimate(std::uint64_t hits, std::uint64_t n, double sampling_volume);

}  // namespace curvball
