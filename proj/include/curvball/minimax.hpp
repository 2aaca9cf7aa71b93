#pragma once

#include <optional>
#include <span>
#include <vector>

#include "curvball/geom_core.hpp"

namespace curvball {

struct EnclosingBall {
  Ball ball;
  // max_i distance(center, p_i) - radius; nonpositive by construction.
  double max_violation = 0.0;
  int iterations = 0;
};

// Exact smallest enclosing ball in E^d (randomized move-to-front).
EnclosingBall meb_euclidean(std::span<const Point> points);

// Smallest enclosing geodesic ball: farthest-point iteration with step
// 1/(t+1), followed by tangent-space refinement. On the sphere the input must
// lie in an open hemisphere.
EnclosingBall meb_geodesic(const Space& s, std::span<const Point> points, int iters);

// Dispatches to meb_euclidean for kappa = 0.
EnclosingBall circumball(const Space& s, std::span<const Point> points, int iters = 2000);

// Jung-type circumradius bound for sets of diameter at most lambda.
double jung_bound(const Space& s, double lambda);

// The weaker linear bounds on the circumradius used to build the lower
// bound f: lambda/sqrt2, (pi/(2 sqrt2)) lambda, (sinh k / (sqrt2 k)) lambda.
// k falls back to s.k_cap when not given.
double relaxed_circumradius_bound(const Space& s, double lambda,
                                  std::optional<double> k = std::nullopt);

}  // namespace curvball
