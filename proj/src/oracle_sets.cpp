#include "curvball/oracle_sets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvball/errors.hpp"
#include "curvball/measure.hpp"
#include "curvball/minimax.hpp"

namespace curvball {

std::string to_string(Descriptor d) {
  switch (d) {
    case Descriptor::UnionOfBalls: return "union-of-balls";
    case Descriptor::BallIntersection: return "ball-intersection";
    case Descriptor::Symmetrized: return "symmetrized";
    case Descriptor::Reflected: return "reflected";
    case Descriptor::Composite: return "composite";
    case Descriptor::Empty: return "empty";
  }
  return "?";
}

SetOracle::SetOracle(Space space, Predicate member, Ball bound, Descriptor descriptor)
    : space_(std::move(space)),
      member_(std::make_shared<const Predicate>(std::move(member))),
      bound_(std::move(bound)),
      descriptor_(descriptor) {}

SetOracle SetOracle::empty(const Space& space) {
  Ball b;
  b.center = origin(space);
  b.empty = true;
  return SetOracle(space, [](const Point&) { return false; }, b, Descriptor::Empty);
}

namespace {

void check_dual_radius(const Space& s, double r) {
  if (!s.admissible_dual_radius(r)) {
    throw InputError("dual radius must lie in (0, pi/2] on the sphere and (0, inf) otherwise");
  }
}

Ball whole_sphere(const Space& s, const Point& c) {
  Ball b;
  b.center = c;
  b.radius = std::numbers::pi;
  (void)s;
  return b;
}

}  // namespace

UnionOfBalls UnionOfBalls::make(const Space& s, std::vector<Ball> balls) {
  if (balls.empty()) throw InputError("a union of balls needs at least one ball");
  for (const auto& b : balls) {
    validate(s, b.center);
    if (b.empty) throw InputError("union members must be nonempty balls");
  }
  return UnionOfBalls{s, std::move(balls)};
}

UnionOfBalls UnionOfBalls::congruent(const Space& s, std::span<const Point> centers,
                                     double radius) {
  std::vector<Ball> balls;
  balls.reserve(centers.size());
  for (const auto& c : centers) balls.push_back(Ball::make(s, c, radius));
  return make(s, std::move(balls));
}

bool UnionOfBalls::contains(const Point& x) const {
  return std::any_of(balls.begin(), balls.end(),
                     [&](const Ball& b) { return b.contains(space, x); });
}

std::optional<double> UnionOfBalls::common_radius(double tol) const {
  const double r0 = balls.front().radius;
  for (const auto& b : balls) {
    if (std::abs(b.radius - r0) > tol) return std::nullopt;
  }
  return r0;
}

Ball UnionOfBalls::bounding_ball() const {
  if (balls.size() == 1) return balls.front();
  std::vector<Point> centers;
  centers.reserve(balls.size());
  for (const auto& b : balls) centers.push_back(b.center);
  Point c;
  try {
    c = circumball(space, centers, 500).ball.center;
  } catch (const InputError&) {
    return whole_sphere(space, balls.front().center);
  }
  double radius = 0.0;
  for (const auto& b : balls) {
    radius = std::max(radius, detail::raw_distance(space, c.coords, b.center.coords) + b.radius);
  }
  if (space.curvature == Curvature::Spherical && radius >= std::numbers::pi) {
    return whole_sphere(space, c);
  }
  Ball out;
  out.center = c;
  out.radius = radius;
  return out;
}

SetOracle UnionOfBalls::oracle() const {
  auto self = *this;
  return SetOracle(space, [self](const Point& x) { return self.contains(x); }, bounding_ball(),
                   Descriptor::UnionOfBalls);
}

bool BallIntersection::trivially_empty() const {
  return canonical_empty || balls.empty() ||
         std::any_of(balls.begin(), balls.end(), [](const Ball& b) { return b.empty; });
}

bool BallIntersection::contains(const Point& x) const {
  if (trivially_empty()) return false;
  return std::all_of(balls.begin(), balls.end(),
                     [&](const Ball& b) { return b.contains(space, x); });
}

SetOracle BallIntersection::oracle() const {
  if (trivially_empty()) return SetOracle::empty(space);
  // Smallest member ball certifies the whole intersection.
  const Ball* bound = &balls.front();
  for (const auto& b : balls) {
    if (b.radius < bound->radius) bound = &b;
  }
  auto self = *this;
  return SetOracle(space, [self](const Point& x) { return self.contains(x); }, *bound,
                   Descriptor::BallIntersection);
}

BallIntersection dual_of_points(const Space& s, std::span<const Point> points, double r) {
  if (points.empty()) throw InputError("dual of an empty point set");
  check_dual_radius(s, r);
  BallIntersection out{s, {}, false};
  out.balls.reserve(points.size());
  for (const auto& p : points) out.balls.push_back(Ball::make(s, p, r));
  return out;
}

BallIntersection dual_of_union_mixed(const UnionOfBalls& u, double t) {
  check_dual_radius(u.space, t);
  BallIntersection out{u.space, {}, false};
  for (const auto& b : u.balls) {
    const double radius = t - b.radius;
    if (radius < 0.0) {
      return BallIntersection{u.space, {}, true};
    }
    out.balls.push_back(Ball::make(u.space, b.center, radius));
  }
  return out;
}

BallIntersection dual_of_union(const UnionOfBalls& u, double t) {
  if (!u.common_radius()) {
    throw InputError("dual_of_union needs congruent balls; use dual_of_union_mixed");
  }
  return dual_of_union_mixed(u, t);
}

BallIntersection intersect(const BallIntersection& a, const BallIntersection& b) {
  if (!(a.space == b.space)) throw InputError("intersecting sets from different spaces");
  BallIntersection out{a.space, a.balls, a.canonical_empty || b.canonical_empty};
  out.balls.insert(out.balls.end(), b.balls.begin(), b.balls.end());
  return out;
}

EmptinessResult is_empty(const BallIntersection& x, std::uint64_t budget, const RngSpec& rng) {
  using Kind = EmptinessResult::Kind;
  if (x.trivially_empty()) return {Kind::EmptyCertified, std::nullopt};
  const Space& s = x.space;
  const auto& balls = x.balls;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      const double d = detail::raw_distance(s, balls[i].center.coords, balls[j].center.coords);
      if (d > balls[i].radius + balls[j].radius) return {Kind::EmptyCertified, std::nullopt};
    }
  }
  auto check = [&](const Point& p) -> std::optional<EmptinessResult> {
    if (x.contains(p)) return EmptinessResult{Kind::NonemptyWitness, p};
    return std::nullopt;
  };
  for (const auto& b : balls) {
    if (auto r = check(b.center)) return *r;
  }
  if (balls.size() == 2) {
    // Point on the centre geodesic at distance a from c1 and d - a from c2.
    const Ball& b1 = balls[0];
    const Ball& b2 = balls[1];
    const double d = detail::raw_distance(s, b1.center.coords, b2.center.coords);
    if (d > 0.0 && !(s.curvature == Curvature::Spherical && std::numbers::pi - d < 1e-12)) {
      const double a = std::clamp(0.5 * (d + b1.radius - b2.radius), std::max(0.0, d - b2.radius),
                                  std::min(b1.radius, d));
      if (auto r = check(geodesic_point(s, b1.center, b2.center, a / d))) return *r;
    }
  }
  if (budget > 0) {
    const SetOracle oracle = x.oracle();
    RandomStream stream(rng);
    const BallSampler sampler(s, oracle.bound());
    for (std::uint64_t i = 0; i < budget; ++i) {
      if (auto r = check(sampler.sample(stream))) return *r;
    }
  }
  return {Kind::Unknown, std::nullopt};
}

std::optional<Point> sample_member(const SetOracle& k, RandomStream& rng,
                                   std::uint64_t max_draws) {
  if (k.known_empty()) return std::nullopt;
  const BallSampler sampler(k.space(), k.bound());
  for (std::uint64_t i = 0; i < max_draws; ++i) {
    Point x = sampler.sample(rng);
    if (k.contains(x)) return x;
  }
  return std::nullopt;
}

SubsetResult subset_of_ball(const SetOracle& k, const Point& y, double r, std::uint64_t m,
                            const RngSpec& rng) {
  if (m < 1) throw InputError("subset_of_ball needs m >= 1");
  if (k.known_empty()) {
    throw DegenerateError("subset_of_ball: set has no sampleable volume");
  }
  const Space& s = k.space();
  const BallSampler sampler(s, k.bound());
  RandomStream stream(rng);
  SubsetResult out;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  while (accepted < m) {
    Point x = sampler.sample(stream);
    ++out.draws;
    if (!k.contains(x)) {
      if (++rejected > 100 * m) {
        throw DegenerateError("subset_of_ball: rejection sampling starved (set of ~zero volume)");
      }
      continue;
    }
    ++accepted;
    if (detail::raw_distance(s, x.coords, y.coords) > r + kRefuteTol) {
      out.refuted = true;
      out.witness = std::move(x);
      return out;
    }
  }
  return out;
}

DoubleDualResult double_dual_member(const BallIntersection& k_dual, double r, const Point& y,
                                    std::uint64_t m, const RngSpec& rng) {
  const SubsetResult sub = subset_of_ball(k_dual.oracle(), y, r, m, rng);
  return DoubleDualResult{!sub.refuted, sub.witness};
}

DoubleDualResult double_dual_member(const Space& s, std::span<const Point> k, double r,
                                    const Point& y, std::uint64_t m, const RngSpec& rng) {
  return double_dual_member(dual_of_points(s, k, r), r, y, m, rng);
}

DoubleDualResult double_dual_member(const UnionOfBalls& k, double r, const Point& y,
                                    std::uint64_t m, const RngSpec& rng) {
  return double_dual_member(dual_of_union_mixed(k, r), r, y, m, rng);
}

SetOracle reflect_set(const SetOracle& k, const OrientedHyperplane& h) {
  if (k.known_empty()) return k;
  const Space s = k.space();
  Ball bound = k.bound();
  bound.center = reflect(s, h, bound.center);
  return SetOracle(s, [k, h, s](const Point& x) { return k.contains(reflect(s, h, x)); }, bound,
                   Descriptor::Reflected);
}

SetOracle symmetrize(const SetOracle& k, const OrientedHyperplane& h) {
  if (k.known_empty()) return k;
  const Space s = k.space();
  Ball mirrored = k.bound();
  mirrored.center = reflect(s, h, mirrored.center);
  const Ball bound = ball_hull(s, k.bound(), mirrored);
  return SetOracle(
      s,
      [k, h, s](const Point& x) {
        const bool here = k.contains(x);
        const bool there = k.contains(reflect(s, h, x));
        return (here && there) || ((here || there) && side(s, h, x) >= 0);
      },
      bound, Descriptor::Symmetrized);
}

CanonicalParts canonical_parts(const SetOracle& k, const OrientedHyperplane& h) {
  if (k.known_empty()) return {k, k, k};
  const Space s = k.space();
  Ball mirrored = k.bound();
  mirrored.center = reflect(s, h, mirrored.center);
  SetOracle core(
      s, [k, h, s](const Point& x) { return k.contains(x) && k.contains(reflect(s, h, x)); },
      k.bound(), Descriptor::Composite);
  SetOracle plus(
      s,
      [k, h, s](const Point& x) {
        return side(s, h, x) >= 0 && k.contains(x) && !k.contains(reflect(s, h, x));
      },
      k.bound(), Descriptor::Composite);
  // x is in the moved part iff sx lies in (K n H-) \ core; sx in H- <=> x in H+.
  SetOracle moved(
      s,
      [k, h, s](const Point& x) {
        return side(s, h, x) >= 0 && !k.contains(x) && k.contains(reflect(s, h, x));
      },
      mirrored, Descriptor::Composite);
  return {core, plus, moved};
}

SetOracle unite(const SetOracle& a, const SetOracle& b) {
  if (!(a.space() == b.space())) throw InputError("union of sets from different spaces");
  if (a.known_empty()) return b;
  if (b.known_empty()) return a;
  return SetOracle(a.space(), [a, b](const Point& x) { return a.contains(x) || b.contains(x); },
                   ball_hull(a.space(), a.bound(), b.bound()), Descriptor::Composite);
}

SetOracle intersect(const SetOracle& a, const SetOracle& b) {
  if (!(a.space() == b.space())) throw InputError("intersection of sets from different spaces");
  if (a.known_empty()) return a;
  if (b.known_empty()) return b;
  const Ball& bound = a.bound().radius <= b.bound().radius ? a.bound() : b.bound();
  return SetOracle(a.space(), [a, b](const Point& x) { return a.contains(x) && b.contains(x); },
                   bound, Descriptor::Composite);
}

}  // namespace curvball
