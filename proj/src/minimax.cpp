#include "curvball/minimax.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <list>
#include <numbers>
#include <numeric>

#include "curvball/errors.hpp"
#include "curvball/rng.hpp"

namespace curvball {

namespace {

struct FlatBall {
  Vec center;
  double sq_radius = -1.0;  // negative: empty
};

FlatBall circumsphere(const std::vector<Vec>& support, int dim) {
  FlatBall out;
  if (support.empty()) {
    out.center = Vec::Zero(dim);
    return out;
  }
  const Vec& p0 = support.front();
  const auto k = static_cast<int>(support.size()) - 1;
  if (k == 0) {
    out.center = p0;
    out.sq_radius = 0.0;
    return out;
  }
  Eigen::MatrixXd q(dim, k);
  for (int j = 0; j < k; ++j) q.col(j) = support[j + 1] - p0;
  const Eigen::MatrixXd gram = 2.0 * q.transpose() * q;
  Eigen::VectorXd rhs(k);
  for (int j = 0; j < k; ++j) rhs[j] = q.col(j).squaredNorm();
  const Eigen::VectorXd lambda = gram.colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXd offset = q * lambda;
  out.center = p0 + Vec(offset);
  out.sq_radius = offset.squaredNorm();
  return out;
}

class MoveToFront {
 public:
  MoveToFront(std::vector<Vec> pts, int dim) : pts_(std::move(pts)), dim_(dim) {
    order_.resize(pts_.size());
    std::iota(order_.begin(), order_.end(), 0);
  }

  FlatBall solve() {
    std::list<std::size_t> order(order_.begin(), order_.end());
    std::vector<Vec> support;
    return recurse(order, order.end(), support);
  }

 private:
  bool inside(const FlatBall& b, const Vec& p) const {
    if (b.sq_radius < 0.0) return false;
    const double slack = 1e-12 * std::max(1.0, b.sq_radius);
    return (p - b.center).squaredNorm() <= b.sq_radius + slack;
  }

  FlatBall recurse(std::list<std::size_t>& order, std::list<std::size_t>::iterator end,
                   std::vector<Vec>& support) {
    FlatBall ball = circumsphere(support, dim_);
    if (static_cast<int>(support.size()) == dim_ + 1) return ball;
    for (auto it = order.begin(); it != end;) {
      auto next = std::next(it);
      if (!inside(ball, pts_[*it])) {
        support.push_back(pts_[*it]);
        ball = recurse(order, it, support);
        support.pop_back();
        order.splice(order.begin(), order, it);
      }
      it = next;
    }
    return ball;
  }

  std::vector<Vec> pts_;
  int dim_;
  std::vector<std::size_t> order_;
};

double max_distance(const Space& s, const Point& c, std::span<const Point> pts,
                    std::size_t* argmax = nullptr) {
  double best = -1.0;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = detail::raw_distance(s, c.coords, pts[i].coords);
    if (d > best) {  // strict: ties keep the lowest index
      best = d;
      idx = i;
    }
  }
  if (argmax) *argmax = idx;
  return best;
}

EnclosingBall finish(const Space& s, const Point& center, std::span<const Point> pts, int iters) {
  EnclosingBall out;
  out.ball.center = center;
  out.ball.radius = std::max(0.0, max_distance(s, center, pts));
  out.max_violation = 0.0;
  for (const auto& p : pts) {
    out.max_violation = std::max(
        out.max_violation, detail::raw_distance(s, center.coords, p.coords) - out.ball.radius);
  }
  out.iterations = iters;
  return out;
}

}  // namespace

EnclosingBall meb_euclidean(std::span<const Point> points) {
  if (points.empty()) throw InputError("meb of an empty point set");
  const auto dim = static_cast<int>(points.front().coords.size());
  std::vector<Vec> pts;
  pts.reserve(points.size());
  for (const auto& p : points) {
    if (p.coords.size() != dim) throw InputError("mixed point dimensions");
    pts.push_back(p.coords);
  }
  // Fixed-seed shuffle keeps the expected linear running time deterministic.
  RandomStream rng(RngSpec{0x6d6562ull, 0});
  for (std::size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[rng.below(i)]);
  const FlatBall b = MoveToFront(std::move(pts), dim).solve();
  return finish(Space::euclidean(std::max(2, dim)), Point{b.center}, points, 1);
}

EnclosingBall meb_geodesic(const Space& s, std::span<const Point> points, int iters) {
  if (points.empty()) throw InputError("meb of an empty point set");
  if (iters < 1) throw InputError("meb_geodesic needs iters >= 1");
  for (const auto& p : points) validate(s, p);
  if (s.curvature == Curvature::Spherical) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        if (detail::raw_distance(s, points[i].coords, points[j].coords) >=
            std::numbers::pi - 1e-6) {
          throw InputError("spherical point set is not contained in an open hemisphere");
        }
      }
    }
  }

  Point center = points.front();
  Point best = center;
  double best_radius = max_distance(s, center, points);
  for (int t = 1; t <= iters; ++t) {
    std::size_t far = 0;
    const double r = max_distance(s, center, points, &far);
    if (r < best_radius) {
      best_radius = r;
      best = center;
    }
    if (r == 0.0) break;
    center = geodesic_point(s, center, points[far], 1.0 / (t + 1.0));
  }
  {
    const double r = max_distance(s, center, points);
    if (r < best_radius) {
      best_radius = r;
      best = center;
    }
  }

  // Refinement: move to the flat MEB centre of the tangent images. Its fixed
  // points are exactly the geodesic MEB centres.
  std::vector<Point> local(points.size());
  for (int round = 0; round < 100 && best_radius > 0.0; ++round) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      local[i] = Point{to_local(s, best, points[i])};
    }
    const Vec step = meb_euclidean(local).ball.center.coords;
    bool improved = false;
    for (double scale = 1.0; scale > 1e-6; scale *= 0.5) {
      const Point candidate = from_local(s, best, scale * step);
      const double r = max_distance(s, candidate, points);
      if (r < best_radius) {
        improved = best_radius - r > 1e-15 * std::max(1.0, best_radius);
        best_radius = r;
        best = candidate;
        break;
      }
    }
    if (!improved) break;
  }
  return finish(s, best, points, iters);
}

EnclosingBall circumball(const Space& s, std::span<const Point> points, int iters) {
  if (s.curvature == Curvature::Euclidean) return meb_euclidean(points);
  return meb_geodesic(s, points, iters);
}

double jung_bound(const Space& s, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("lambda must be positive");
  const double factor = std::sqrt(2.0 * s.dim / (s.dim + 1.0));
  switch (s.curvature) {
    case Curvature::Euclidean: return factor * lambda / 2.0;
    case Curvature::Spherical: {
      const double arg = factor * std::sin(lambda / 2.0);
      if (arg > 1.0) throw InputError("spherical Jung bound undefined: argument exceeds 1");
      return std::asin(arg);
    }
    case Curvature::Hyperbolic: return std::asinh(factor * std::sinh(lambda / 2.0));
  }
  return 0.0;
}

double relaxed_circumradius_bound(const Space& s, double lambda, std::optional<double> k) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("lambda must be positive");
  switch (s.curvature) {
    case Curvature::Euclidean: return lambda / std::numbers::sqrt2;
    case Curvature::Spherical:
      if (!(lambda < std::numbers::pi / 2)) {
        throw InputError("spherical relaxed bound needs 0 < lambda < pi/2");
      }
      return std::numbers::pi / (2.0 * std::numbers::sqrt2) * lambda;
    case Curvature::Hyperbolic: {
      const auto kk = k ? k : s.k_cap;
      if (!kk || !(*kk > 0.0)) throw InputError("hyperbolic relaxed bound needs k > 0");
      if (!(lambda < 2.0 * *kk)) throw InputError("hyperbolic relaxed bound needs lambda < 2k");
      return std::sinh(*kk) / (std::numbers::sqrt2 * *kk) * lambda;
    }
  }
  return 0.0;
}

}  // namespace curvball
