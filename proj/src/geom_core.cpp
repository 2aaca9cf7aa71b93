#include "curvball/geom_core.hpp"

#include <cmath>
#include <numbers>

#include "curvball/errors.hpp"

namespace curvball {

namespace {

void check_dim(int d) {
  if (d < 2 || d > kMaxDim) {
    throw InputError("dimension must lie in [2, " + std::to_string(kMaxDim) +
                     "], got " + std::to_string(d));
  }
}

// Spatial part of a hyperboloid vector.
auto spatial(const Vec& x) { return x.head(x.size() - 1); }

}  // namespace

Space Space::euclidean(int d) { return from_kappa(0, d); }
Space Space::spherical(int d) { return from_kappa(1, d); }
Space Space::hyperbolic(int d, std::optional<double> k) { return from_kappa(-1, d, k); }

Space Space::from_kappa(int kappa, int d, std::optional<double> k) {
  check_dim(d);
  if (kappa < -1 || kappa > 1) {
    throw InputError("curvature must be -1, 0 or +1");
  }
  if (k && (kappa != -1 || !(*k > 0.0))) {
    throw InputError("k is a positive scale available only for hyperbolic space");
  }
  Space s;
  s.curvature = static_cast<Curvature>(kappa);
  s.dim = d;
  s.k_cap = k;
  return s;
}

double Space::max_dual_radius() const {
  return curvature == Curvature::Spherical ? std::numbers::pi / 2
                                           : std::numeric_limits<double>::infinity();
}

bool Space::admissible_dual_radius(double r) const {
  return r > 0.0 && r <= max_dual_radius() && std::isfinite(r);
}

std::string to_string(Curvature c) {
  switch (c) {
    case Curvature::Hyperbolic: return "hyperbolic";
    case Curvature::Euclidean: return "euclidean";
    case Curvature::Spherical: return "spherical";
  }
  return "?";
}

Curvature curvature_from_string(const std::string& name) {
  if (name == "euclidean") return Curvature::Euclidean;
  if (name == "spherical") return Curvature::Spherical;
  if (name == "hyperbolic") return Curvature::Hyperbolic;
  throw InputError("unknown space '" + name + "' (expected euclidean|spherical|hyperbolic)");
}

double lorentz(const Vec& x, const Vec& y) {
  const auto n = x.size() - 1;
  return x.head(n).dot(y.head(n)) - x[n] * y[n];
}

double form(const Space& s, const Vec& x, const Vec& y) {
  return s.curvature == Curvature::Hyperbolic ? lorentz(x, y) : x.dot(y);
}

bool on_model(const Space& s, const Vec& v, double tol) {
  if (v.size() != s.ambient_dim() || !v.allFinite()) return false;
  switch (s.curvature) {
    case Curvature::Euclidean: return true;
    case Curvature::Spherical: return std::abs(v.norm() - 1.0) <= tol;
    case Curvature::Hyperbolic:
      return v[v.size() - 1] > 0.0 && std::abs(lorentz(v, v) + 1.0) <= tol;
  }
  return false;
}

void validate(const Space& s, const Point& p) {
  if (p.coords.size() != s.ambient_dim()) {
    throw InputError("point has " + std::to_string(p.coords.size()) +
                     " coordinates, expected " + std::to_string(s.ambient_dim()) + " for " +
                     to_string(s.curvature) + " d=" + std::to_string(s.dim));
  }
  if (!on_model(s, p.coords)) {
    throw InputError("point is not on the " + to_string(s.curvature) + " model");
  }
}

Point project(const Space& s, Vec coords) {
  switch (s.curvature) {
    case Curvature::Euclidean: break;
    case Curvature::Spherical: {
      const double n = coords.norm();
      if (!(n > 0.0)) throw DegenerateError("cannot project the zero vector onto the sphere");
      coords /= n;
      break;
    }
    case Curvature::Hyperbolic: {
      const auto n = coords.size() - 1;
      coords[n] = std::sqrt(1.0 + coords.head(n).squaredNorm());
      break;
    }
  }
  return Point{std::move(coords)};
}

Point make_point(const Space& s, const Vec& coords, double tol) {
  if (coords.size() != s.ambient_dim()) {
    throw InputError("point has " + std::to_string(coords.size()) + " coordinates, expected " +
                     std::to_string(s.ambient_dim()));
  }
  if (!on_model(s, coords, tol)) {
    throw InputError("point is not on the " + to_string(s.curvature) + " model");
  }
  return project(s, coords);
}

Point origin(const Space& s) {
  Vec v = Vec::Zero(s.ambient_dim());
  if (s.curved()) v[s.dim] = 1.0;
  return Point{v};
}

Point from_polar(const Space& s, const Vec& u, double rho) {
  Vec v(s.ambient_dim());
  switch (s.curvature) {
    case Curvature::Euclidean: v = rho * u; break;
    case Curvature::Spherical:
      v.head(s.dim) = std::sin(rho) * u;
      v[s.dim] = std::cos(rho);
      break;
    case Curvature::Hyperbolic:
      v.head(s.dim) = std::sinh(rho) * u;
      v[s.dim] = std::cosh(rho);
      break;
  }
  return Point{v};
}

Point transport_from_origin(const Space& s, const Point& c, const Point& x) {
  switch (s.curvature) {
    case Curvature::Euclidean: return Point{c.coords + x.coords};
    case Curvature::Spherical: {
      // Householder reflection swapping the north pole and c.
      Vec w = -c.coords;
      w[s.dim] += 1.0;
      const double n2 = w.squaredNorm();
      if (n2 < 1e-30) return x;
      Vec y = x.coords - (2.0 * w.dot(x.coords) / n2) * w;
      return project(s, std::move(y));
    }
    case Curvature::Hyperbolic: {
      // Lorentz boost taking (0,...,0,1) to c.
      const auto cs = spatial(c.coords);
      const double ct = c.coords[s.dim];
      const auto xs = spatial(x.coords);
      const double xt = x.coords[s.dim];
      const double cx = cs.dot(xs);
      Vec y(s.ambient_dim());
      y.head(s.dim) = xs + cs * (cx / (1.0 + ct) + xt);
      y[s.dim] = cx + ct * xt;
      return project(s, std::move(y));
    }
  }
  return x;
}

Point transport_to_origin(const Space& s, const Point& c, const Point& x) {
  switch (s.curvature) {
    case Curvature::Euclidean: return Point{x.coords - c.coords};
    case Curvature::Spherical: return transport_from_origin(s, c, x);
    case Curvature::Hyperbolic: {
      Point inv = c;
      inv.coords.head(s.dim) = -c.coords.head(s.dim);
      return transport_from_origin(s, inv, x);
    }
  }
  return x;
}

Vec to_local(const Space& s, const Point& c, const Point& x) {
  const Point y = transport_to_origin(s, c, x);
  if (s.curvature == Curvature::Euclidean) return y.coords;
  const Vec dir = y.coords.head(s.dim);
  const double n = dir.norm();
  if (n < 1e-300) return Vec::Zero(s.dim);
  const double rho = detail::raw_distance(s, origin(s).coords, y.coords);
  return (rho / n) * dir;
}

Point from_local(const Space& s, const Point& c, const Vec& v) {
  if (s.curvature == Curvature::Euclidean) return Point{c.coords + v};
  const double rho = v.norm();
  if (rho < 1e-300) return c;
  return transport_from_origin(s, c, from_polar(s, v / rho, rho));
}

namespace detail {

double raw_distance(const Space& s, const Vec& x, const Vec& y) {
  switch (s.curvature) {
    case Curvature::Euclidean: return (x - y).norm();
    case Curvature::Spherical:
      // Equals arccos<x,y> but keeps full precision near 0 and pi.
      return 2.0 * std::atan2((x - y).norm(), (x + y).norm());
    case Curvature::Hyperbolic: {
      // <x-y,x-y>_L = 4 sinh^2(dist/2); clamp drift below zero.
      const Vec diff = x - y;
      const double q = std::max(0.0, lorentz(diff, diff));
      return 2.0 * std::asinh(0.5 * std::sqrt(q));
    }
  }
  return 0.0;
}

}  // namespace detail

double distance(const Space& s, const Point& x, const Point& y) {
  validate(s, x);
  validate(s, y);
  return detail::raw_distance(s, x.coords, y.coords);
}

OrientedHyperplane make_hyperplane(const Space& s, const Vec& normal, double offset) {
  if (normal.size() != s.ambient_dim() || !normal.allFinite()) {
    throw InputError("hyperplane normal has wrong length for this space");
  }
  OrientedHyperplane h;
  switch (s.curvature) {
    case Curvature::Euclidean:
    case Curvature::Spherical: {
      const double n = normal.norm();
      if (!(n > 0.0)) throw InputError("hyperplane normal must be nonzero");
      h.normal = normal / n;
      h.offset = s.curvature == Curvature::Euclidean ? offset / n : 0.0;
      break;
    }
    case Curvature::Hyperbolic: {
      const double q = lorentz(normal, normal);
      if (!(q > 0.0)) throw InputError("hyperbolic hyperplane normal must be spacelike");
      h.normal = normal / std::sqrt(q);
      break;
    }
  }
  return h;
}

double side_value(const Space& s, const OrientedHyperplane& h, const Point& x) {
  switch (s.curvature) {
    case Curvature::Euclidean: return h.normal.dot(x.coords) - h.offset;
    case Curvature::Spherical: return h.normal.dot(x.coords);
    case Curvature::Hyperbolic: return lorentz(x.coords, h.normal);
  }
  return 0.0;
}

int side(const Space& s, const OrientedHyperplane& h, const Point& x) {
  const double v = side_value(s, h, x);
  if (std::abs(v) <= kSideTol) return 0;
  return v > 0.0 ? 1 : -1;
}

Point reflect(const Space& s, const OrientedHyperplane& h, const Point& x) {
  const double v = side_value(s, h, x);
  return project(s, x.coords - 2.0 * v * h.normal);
}

Point geodesic_point(const Space& s, const Point& x, const Point& y, double t) {
  if (t == 0.0) return x;
  if (t == 1.0) return y;
  const double dist = detail::raw_distance(s, x.coords, y.coords);
  switch (s.curvature) {
    case Curvature::Euclidean: return Point{x.coords + t * (y.coords - x.coords)};
    case Curvature::Spherical: {
      if (std::numbers::pi - dist < 1e-12) {
        throw DegenerateError("geodesic between antipodal points is not unique");
      }
      if (dist < 1e-15) return x;
      const double sd = std::sin(dist);
      return project(s, (std::sin((1.0 - t) * dist) / sd) * x.coords +
                            (std::sin(t * dist) / sd) * y.coords);
    }
    case Curvature::Hyperbolic: {
      if (dist < 1e-15) return x;
      const double sd = std::sinh(dist);
      return project(s, (std::sinh((1.0 - t) * dist) / sd) * x.coords +
                            (std::sinh(t * dist) / sd) * y.coords);
    }
  }
  return x;
}

OrientedHyperplane bisector(const Space& s, const Point& a, const Point& b) {
  if (detail::raw_distance(s, a.coords, b.coords) < 1e-14) {
    throw DegenerateError("bisector of coincident points is undefined");
  }
  const Vec diff = b.coords - a.coords;
  switch (s.curvature) {
    case Curvature::Euclidean:
      return make_hyperplane(s, diff, diff.dot(0.5 * (a.coords + b.coords)));
    case Curvature::Spherical:
    case Curvature::Hyperbolic: return make_hyperplane(s, diff);
  }
  return {};
}

Point exp_map(const Space& s, const Point& c, const Vec& v, double t) {
  switch (s.curvature) {
    case Curvature::Euclidean: return Point{c.coords + t * v};
    case Curvature::Spherical: return project(s, std::cos(t) * c.coords + std::sin(t) * v);
    case Curvature::Hyperbolic: return project(s, std::cosh(t) * c.coords + std::sinh(t) * v);
  }
  return c;
}

Vec log_map(const Space& s, const Point& c, const Point& x) {
  if (s.curvature == Curvature::Euclidean) return x.coords - c.coords;
  const double dist = detail::raw_distance(s, c.coords, x.coords);
  Vec u = s.curvature == Curvature::Spherical ? Vec(x.coords - c.coords.dot(x.coords) * c.coords)
                                              : Vec(x.coords + lorentz(c.coords, x.coords) * c.coords);
  const double q = form(s, u, u);
  if (dist < 1e-15 || !(q > 0.0)) return Vec::Zero(s.ambient_dim());
  return (dist / std::sqrt(q)) * u;
}

Ball Ball::make(const Space& s, const Point& center, double nominal_radius) {
  validate(s, center);
  if (std::isnan(nominal_radius)) throw InputError("ball radius is NaN");
  Ball b;
  b.center = center;
  if (nominal_radius < 0.0) {
    b.empty = true;
    b.radius = 0.0;
    return b;
  }
  if (s.curvature == Curvature::Spherical && nominal_radius > std::numbers::pi) {
    throw InputError("spherical ball radius exceeds pi");
  }
  b.radius = nominal_radius;
  return b;
}

bool Ball::contains(const Space& s, const Point& x, double tol) const {
  return !empty && detail::raw_distance(s, center.coords, x.coords) <= radius + tol;
}

Ball ball_hull(const Space& s, const Ball& a, const Ball& b) {
  if (a.empty) return b;
  if (b.empty) return a;
  const double dist = detail::raw_distance(s, a.center.coords, b.center.coords);
  if (dist + b.radius <= a.radius) return a;
  if (dist + a.radius <= b.radius) return b;
  const double r = 0.5 * (dist + a.radius + b.radius);
  if (s.curvature == Curvature::Spherical &&
      (r >= std::numbers::pi || std::numbers::pi - dist < 1e-9)) {
    Ball whole = a;
    whole.radius = std::numbers::pi;
    return whole;
  }
  Ball out;
  out.center = geodesic_point(s, a.center, b.center, (r - a.radius) / dist);
  out.radius = r;
  return out;
}

}  // namespace curvball
