#include "curvball/exact2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvball/errors.hpp"

namespace curvball::exact2d {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSnap = 1e-12;

// Wrap `angle` to the representative closest to `ref`.
double unwrap_near(double angle, double ref) {
  return angle + kTwoPi * std::round((ref - angle) / kTwoPi);
}

}  // namespace

P2 ArcPolygon::arc_point(const Arc& a, double angle) const {
  return centers[a.center] + radius * P2(std::cos(angle), std::sin(angle));
}

bool ArcPolygon::contains(const P2& x, double tol) const {
  if (degenerate == Degeneracy::Empty) return false;
  return std::all_of(centers.begin(), centers.end(),
                     [&](const P2& c) { return (x - c).norm() <= radius + tol; });
}

ArcPolygon disk_polygon(std::span<const P2> input, double r) {
  if (input.empty()) throw InputError("disk_polygon needs at least one centre");
  if (!(r > 0.0)) throw InputError("disk_polygon needs a positive radius");

  ArcPolygon out;
  out.radius = r;
  for (const auto& c : input) {
    const bool dup = std::any_of(out.centers.begin(), out.centers.end(),
                                 [&](const P2& e) { return (e - c).norm() <= kSnap * r; });
    if (!dup) out.centers.push_back(c);
  }
  const std::size_t n = out.centers.size();
  if (n == 1) {
    out.degenerate = Degeneracy::FullDisk;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if ((out.centers[i] - out.centers[j]).norm() > 2.0 * r * (1.0 + kSnap)) {
        out.degenerate = Degeneracy::Empty;
        return out;
      }
    }
  }

  // Angular interval of circle i lying inside every other disk. Each
  // constraint is an arc of length < pi, so the intersection stays one arc.
  struct Interval {
    double lo, hi;
    bool alive;
  };
  std::vector<Interval> spans(n);
  for (std::size_t i = 0; i < n; ++i) {
    Interval iv{0.0, 0.0, true};
    bool first = true;
    for (std::size_t j = 0; j < n && iv.alive; ++j) {
      if (j == i) continue;
      const P2 diff = out.centers[j] - out.centers[i];
      const double dist = diff.norm();
      const double half = std::acos(std::min(1.0, dist / (2.0 * r)));
      double phi = std::atan2(diff.y(), diff.x());
      if (first) {
        iv.lo = phi - half;
        iv.hi = phi + half;
        first = false;
        continue;
      }
      phi = unwrap_near(phi, 0.5 * (iv.lo + iv.hi));
      iv.lo = std::max(iv.lo, phi - half);
      iv.hi = std::min(iv.hi, phi + half);
      if (iv.hi < iv.lo - kSnap) iv.alive = false;
    }
    spans[i] = iv;
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (spans[i].alive && spans[i].hi - spans[i].lo > kSnap) {
      out.arcs.push_back(Arc{i, spans[i].lo, spans[i].hi});
    }
  }

  if (out.arcs.empty()) {
    // Either empty or a single point (tangencies, concurrent circles).
    for (std::size_t i = 0; i < n; ++i) {
      if (!spans[i].alive) continue;
      const double mid = 0.5 * (spans[i].lo + spans[i].hi);
      const P2 x = out.centers[i] + r * P2(std::cos(mid), std::sin(mid));
      const bool in_all = std::all_of(out.centers.begin(), out.centers.end(), [&](const P2& c) {
        return (x - c).norm() <= r * (1.0 + 1e-9);
      });
      if (in_all) {
        out.degenerate = Degeneracy::SinglePoint;
        out.point = x;
        return out;
      }
    }
    out.degenerate = Degeneracy::Empty;
    return out;
  }

  out.degenerate = Degeneracy::None;
  P2 centroid = P2::Zero();
  for (const auto& a : out.arcs) centroid += out.arc_point(a, 0.5 * (a.start + a.end));
  centroid /= static_cast<double>(out.arcs.size());
  std::sort(out.arcs.begin(), out.arcs.end(), [&](const Arc& a, const Arc& b) {
    const P2 pa = out.arc_point(a, 0.5 * (a.start + a.end)) - centroid;
    const P2 pb = out.arc_point(b, 0.5 * (b.start + b.end)) - centroid;
    return std::atan2(pa.y(), pa.x()) < std::atan2(pb.y(), pb.x());
  });
  for (const auto& a : out.arcs) out.vertices.push_back(out.arc_point(a, a.start));
  return out;
}

double arc_polygon_area(const ArcPolygon& a) {
  switch (a.degenerate) {
    case Degeneracy::Empty:
    case Degeneracy::SinglePoint: return 0.0;
    case Degeneracy::FullDisk: return std::numbers::pi * a.radius * a.radius;
    case Degeneracy::None: break;
  }
  // Green's theorem, 1/2 closed-integral of (x dy - y dx), arc by arc.
  const double r = a.radius;
  double twice_area = 0.0;
  for (const auto& arc : a.arcs) {
    const P2& c = a.centers[arc.center];
    twice_area += r * r * (arc.end - arc.start) +
                  r * c.x() * (std::sin(arc.end) - std::sin(arc.start)) +
                  r * c.y() * (std::cos(arc.start) - std::cos(arc.end));
  }
  return std::max(0.0, 0.5 * twice_area);
}

double lens_area(double delta, double r) {
  if (!(r > 0.0)) throw InputError("lens_area needs r > 0");
  if (!(delta >= 0.0) || delta > 2.0 * r) throw InputError("lens_area needs 0 <= delta <= 2r");
  return 2.0 * r * r * std::acos(delta / (2.0 * r)) -
         0.5 * delta * std::sqrt(std::max(0.0, 4.0 * r * r - delta * delta));
}

}  // namespace curvball::exact2d
