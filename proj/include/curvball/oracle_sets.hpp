#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "curvball/geom_core.hpp"
#include "curvball/rng.hpp"
#include "curvball/set_oracle.hpp"

namespace curvball {

// Slack applied before a distance comparison counts as a certified
// counterexample; absorbs rounding in boundary configurations.
inline constexpr double kRefuteTol = 1e-9;

// Default sample count m for one-sided inclusion probes.
inline constexpr std::uint64_t kDefaultProbeSamples = 10'000;

struct UnionOfBalls {
  Space space;
  std::vector<Ball> balls;

  static UnionOfBalls make(const Space& s, std::vector<Ball> balls);
  // Congruent balls of radius `radius` around `centers`.
  static UnionOfBalls congruent(const Space& s, std::span<const Point> centers, double radius);

  bool contains(const Point& x) const;
  std::optional<double> common_radius(double tol = 1e-12) const;
  Ball bounding_ball() const;
  SetOracle oracle() const;
};

// Finite intersection of balls. An empty ball list with canonical_empty set
// is the empty set; an empty ball in the list also makes the set empty.
struct BallIntersection {
  Space space;
  std::vector<Ball> balls;
  bool canonical_empty = false;

  bool trivially_empty() const;
  bool contains(const Point& x) const;
  SetOracle oracle() const;
};

// X^r for a finite point set: the intersection of the r-balls about P.
BallIntersection dual_of_points(const Space& s, std::span<const Point> points, double r);

// t-dual of a union of congruent s-balls: the intersection of the (t - s)-balls
// about the centres. Throws for mixed radii.
BallIntersection dual_of_union(const UnionOfBalls& u, double t);

// Extension of dual_of_union to mixed radii (ball i contributes radius t - s_i).
BallIntersection dual_of_union_mixed(const UnionOfBalls& u, double t);

// (X u Y)^r = X^r n Y^r on the ball-list representation.
BallIntersection intersect(const BallIntersection& a, const BallIntersection& b);

struct EmptinessResult {
  enum class Kind { EmptyCertified, NonemptyWitness, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<Point> witness;
};

EmptinessResult is_empty(const BallIntersection& x, std::uint64_t budget, const RngSpec& rng);

struct SubsetResult {
  bool refuted = false;
  std::optional<Point> witness;  // member of K farther than r from y
  std::uint64_t draws = 0;
};

// One-sided test of K subset B[y, r]: draws m members of K by rejection from
// K.bound(). Throws DegenerateError after 100 m rejections.
SubsetResult subset_of_ball(const SetOracle& k, const Point& y, double r, std::uint64_t m,
                            const RngSpec& rng);

struct DoubleDualResult {
  bool in_unrefuted = true;
  std::optional<Point> witness;  // member of K^r farther than r from y
};

// y in (K^r)^r, i.e. y in conv_r K, given K^r as a ball intersection.
DoubleDualResult double_dual_member(const BallIntersection& k_dual, double r, const Point& y,
                                    std::uint64_t m, const RngSpec& rng);
DoubleDualResult double_dual_member(const Space& s, std::span<const Point> k, double r,
                                    const Point& y, std::uint64_t m, const RngSpec& rng);
DoubleDualResult double_dual_member(const UnionOfBalls& k, double r, const Point& y,
                                    std::uint64_t m, const RngSpec& rng);

SetOracle reflect_set(const SetOracle& k, const OrientedHyperplane& h);

// Two-point symmetrization: (K n sK) u ((K u sK) n H+).
SetOracle symmetrize(const SetOracle& k, const OrientedHyperplane& h);

struct CanonicalParts {
  SetOracle core;   // K n sK
  SetOracle plus;   // (K n H+) \ core
  SetOracle moved;  // s((K n H-) \ core)
};

CanonicalParts canonical_parts(const SetOracle& k, const OrientedHyperplane& h);

SetOracle unite(const SetOracle& a, const SetOracle& b);
SetOracle intersect(const SetOracle& a, const SetOracle& b);

// Draws one member of K by rejection from its bound (nullopt after
// max_draws misses).
std::optional<Point> sample_member(const SetOracle& k, RandomStream& rng, std::uint64_t max_draws);

}  // namespace curvball
