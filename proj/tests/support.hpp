#pragma once

// Independent reference formulas and random generators shared by the tests.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "curvball/geom_core.hpp"
#include "curvball/rng.hpp"

namespace testing_support {

using namespace curvball;

inline constexpr double kPi = std::numbers::pi;

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Reference distances written straight from the textbook formulas.
inline double ref_distance(const Space& s, const Vec& x, const Vec& y) {
  switch (s.curvature) {
    case Curvature::Euclidean: return (x - y).norm();
    case Curvature::Spherical: return std::acos(std::clamp(x.dot(y), -1.0, 1.0));
    case Curvature::Hyperbolic: {
      const int n = s.dim;
      double l = -x[n] * y[n];
      for (int i = 0; i < n; ++i) l += x[i] * y[i];
      return std::acosh(std::max(1.0, -l));
    }
  }
  return 0.0;
}

// Closed-form ball volumes in dimensions 2 and 3.
inline double ref_ball_volume(const Space& s, double r) {
  const int d = s.dim;
  switch (s.curvature) {
    case Curvature::Euclidean: return d == 2 ? kPi * r * r : 4.0 / 3.0 * kPi * r * r * r;
    case Curvature::Spherical:
      return d == 2 ? 2 * kPi * (1 - std::cos(r)) : kPi * (2 * r - std::sin(2 * r));
    case Curvature::Hyperbolic:
      return d == 2 ? 2 * kPi * (std::cosh(r) - 1) : kPi * (std::sinh(2 * r) - 2 * r);
  }
  return 0.0;
}

// Unit vector of length n from Gaussian coordinates.
inline Vec random_direction(int n, RandomStream& rng) {
  Vec u(n);
  do {
    for (int i = 0; i < n; ++i) u[i] = rng.normal();
  } while (u.norm() < 1e-9);
  return u / u.norm();
}

// Point at geodesic distance rho from the model origin in direction u (length d),
// built from the explicit parametrisations rather than the library helpers.
inline Point polar_point(const Space& s, const Vec& u, double rho) {
  const int d = s.dim;
  if (s.curvature == Curvature::Euclidean) return Point{u * rho};
  Vec x(d + 1);
  if (s.curvature == Curvature::Spherical) {
    x.head(d) = u * std::sin(rho);
    x[d] = std::cos(rho);
  } else {
    x.head(d) = u * std::sinh(rho);
    x[d] = std::cosh(rho);
  }
  return Point{x};
}

// Point within geodesic distance `radius` of the origin; radial law is not
// uniform in volume, which is fine for property tests.
inline Point random_point(const Space& s, double radius, RandomStream& rng) {
  return polar_point(s, random_direction(s.dim, rng), radius * rng.uniform());
}

inline std::vector<Point> random_points(const Space& s, int n, double radius, RandomStream& rng) {
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back(random_point(s, radius, rng));
  return pts;
}

inline std::vector<Space> all_planes() {
  return {Space::euclidean(2), Space::spherical(2), Space::hyperbolic(2)};
}

}  // namespace testing_support
