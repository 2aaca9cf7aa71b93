#include "curvball/kp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvball/errors.hpp"
#include "curvball/minimax.hpp"
#include "curvball/oracle_sets.hpp"

namespace curvball {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

// Coefficient (1/(2 e d pi^{d-1}))^{1/d}.
double spherical_coefficient(int d) {
  return std::pow(1.0 / (2.0 * kE * d * std::pow(kPi, d - 1)), 1.0 / d);
}

// Coefficient (2k / sinh 2k)^{(d-1)/d}.
double hyperbolic_coefficient(int d, double k) {
  return std::pow(2.0 * k / std::sinh(2.0 * k), (d - 1.0) / d);
}

}  // namespace

KPParams KPParams::make(const Space& s, long long n, double lambda, double delta,
                        std::optional<double> k) {
  if (n < 1) throw InputError("N must be at least 1");
  if (!std::isfinite(lambda) || !std::isfinite(delta)) throw InputError("non-finite parameter");
  KPParams p;
  p.space = s;
  p.n = n;
  p.lambda = lambda;
  p.delta = delta;
  switch (s.curvature) {
    case Curvature::Euclidean:
      if (!(lambda > 0.0 && lambda <= kSqrt2 * delta)) {
        throw InputError("euclidean case needs 0 < lambda <= sqrt2 * delta");
      }
      break;
    case Curvature::Spherical:
      if (!(delta > 0.0 && delta < kPi / 2)) {
        throw InputError("spherical case needs 0 < delta < pi/2");
      }
      if (!(lambda > 0.0 && lambda < std::min(2.0 * kSqrt2 / kPi * delta, kPi - 2.0 * delta))) {
        throw InputError("spherical case needs 0 < lambda < min(2 sqrt2 delta / pi, pi - 2 delta)");
      }
      break;
    case Curvature::Hyperbolic: {
      const double kk = k ? *k : (s.k_cap ? *s.k_cap : std::max(delta * 1.0001, 1.0));
      if (!(kk > 0.0)) throw InputError("hyperbolic case needs k > 0");
      const double scaled = std::sinh(kk) / (kSqrt2 * kk) * lambda;
      if (!(lambda > 0.0 && scaled <= delta && delta < kk)) {
        throw InputError("hyperbolic case needs 0 < (sinh k / (sqrt2 k)) lambda <= delta < k");
      }
      p.k = kk;
      p.space.k_cap = kk;
      break;
    }
  }
  return p;
}

double KPParams::k_value() const {
  if (!k) throw InputError("k is only defined for hyperbolic parameters");
  return *k;
}

double threshold_value(const Space& s, std::optional<double> k) {
  const int d = s.dim;
  switch (s.curvature) {
    case Curvature::Euclidean: return std::pow(1.0 + kSqrt2, d);
    case Curvature::Spherical:
      return 2.0 * kE * d * std::pow(kPi, d - 1) * std::pow(0.5 + kPi / (2.0 * kSqrt2), d);
    case Curvature::Hyperbolic: {
      const auto kk = k ? k : s.k_cap;
      if (!kk || !(*kk > 0.0)) throw InputError("hyperbolic threshold needs k > 0");
      return std::pow(std::sinh(2.0 * *kk) / (2.0 * *kk), d - 1) *
             std::pow(kSqrt2 * std::sinh(*kk) / *kk + 1.0, d);
    }
  }
  return 0.0;
}

long long threshold_N(const KPParams& p) {
  return static_cast<long long>(std::ceil(threshold_value(p.space, p.k)));
}

double f_lower_radius(const KPParams& p) {
  return p.delta - relaxed_circumradius_bound(p.space, p.lambda, p.k);
}

double f_lower_bound(const KPParams& p) {
  const double radius = f_lower_radius(p);
  if (radius < 0.0) throw InputError("lower-bound radius is negative: hypotheses violated");
  return ball_volume(p.space, radius);
}

double g_upper_radius(const KPParams& p) {
  const int d = p.space.dim;
  const double root_n = std::pow(static_cast<double>(p.n), 1.0 / d);
  switch (p.space.curvature) {
    case Curvature::Euclidean: return p.delta - 0.5 * (root_n - 1.0) * p.lambda;
    case Curvature::Spherical:
      return p.delta - (spherical_coefficient(d) * root_n - 0.5) * p.lambda;
    case Curvature::Hyperbolic:
      return p.delta - (hyperbolic_coefficient(d, p.k_value()) * root_n - 1.0) * 0.5 * p.lambda;
  }
  return 0.0;
}

double g_upper_bound(const KPParams& p) {
  const double radius = g_upper_radius(p);
  return radius < 0.0 ? 0.0 : ball_volume(p.space, radius);
}

std::string to_string(PropCheck::Status s) {
  switch (s) {
    case PropCheck::Status::Holds: return "holds";
    case PropCheck::Status::Fails: return "fails";
    case PropCheck::Status::PreconditionUnmet: return "precondition-unmet";
  }
  return "?";
}

PropCheck check_prop_spherical(int d, long long n, double lambda) {
  const Space s = Space::spherical(d);
  PropCheck out;
  const MuSolution mu = mu_solve(s, n, lambda);
  if (mu.saturated) {
    out.note = "N balls of radius lambda/2 exceed the volume of the sphere";
    return out;
  }
  out.mu = mu.mu;
  out.lhs = spherical_coefficient(d) * std::pow(static_cast<double>(n), 1.0 / d) * lambda;
  if (!(mu.mu > 0.0 && mu.mu < kPi / 2)) {
    out.note = "mu is not in (0, pi/2)";
    return out;
  }
  out.status = out.lhs < out.mu ? PropCheck::Status::Holds : PropCheck::Status::Fails;
  return out;
}

PropCheck check_prop_hyperbolic(int d, double k, long long n, double lambda, double delta) {
  PropCheck out;
  try {
    (void)KPParams::make(Space::hyperbolic(d), n, lambda, delta, k);
  } catch (const InputError& e) {
    out.note = e.what();
    return out;
  }
  const MuSolution mu = mu_solve(Space::hyperbolic(d), n, lambda);
  out.mu = mu.mu;
  out.lhs = hyperbolic_coefficient(d, k) * std::pow(static_cast<double>(n), 1.0 / d) * 0.5 * lambda;
  if (!(mu.mu > 0.0 && mu.mu <= delta + 0.5 * lambda)) {
    out.note = "mu exceeds delta + lambda/2";
    return out;
  }
  out.status = out.lhs < out.mu ? PropCheck::Status::Holds : PropCheck::Status::Fails;
  return out;
}

double min_pairwise_distance(const Space& s, std::span<const Point> pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::min(best, detail::raw_distance(s, pts[i].coords, pts[j].coords));
    }
  }
  return best;
}

double max_pairwise_distance(const Space& s, std::span<const Point> pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::max(best, detail::raw_distance(s, pts[i].coords, pts[j].coords));
    }
  }
  return best;
}

void validate_contraction(const Space& s, std::span<const Point> p, std::span<const Point> q,
                          double lambda) {
  if (p.size() != q.size()) throw InputError("P and Q must have the same number of points");
  if (p.empty()) throw InputError("P and Q must be nonempty");
  for (const auto& x : p) validate(s, x);
  for (const auto& x : q) validate(s, x);
  if (min_pairwise_distance(s, p) < lambda) {
    throw InputError("P is not lambda-separated");
  }
  if (max_pairwise_distance(s, q) > lambda * (1.0 + 1e-12)) {
    throw InputError("Q has a pair farther apart than lambda");
  }
}

std::vector<Point> gen_contracted(const KPParams& p, const RngSpec& rng) {
  RandomStream stream(rng);
  const BallSampler sampler(p.space, Ball::make(p.space, origin(p.space), 0.5 * p.lambda));
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(p.n));
  for (long long i = 0; i < p.n; ++i) pts.push_back(sampler.sample(stream));
  if (max_pairwise_distance(p.space, pts) > p.lambda * (1.0 + 1e-12)) {
    throw InfeasibleError("contracted configuration failed validation");
  }
  return pts;
}

namespace {

// N lattice points nearest the origin (hexagonal in the plane, cubic
// otherwise), with minimum distance at least lambda.
std::vector<Point> lattice_patch(const Space& s, long long n, double lambda) {
  const int d = s.dim;
  // Pad the spacing by one part in 1e12 so rounding never dips below lambda.
  const double step = lambda * (1.0 + 1e-12);
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(d, d);
  if (d == 2) {
    basis << 1.0, 0.5, 0.0, std::sqrt(3.0) / 2.0;
  }
  int extent = 1;
  while (std::pow(2 * extent + 1, d) < 4.0 * static_cast<double>(n)) ++extent;
  std::vector<Vec> cand;
  std::vector<int> idx(d, -extent);
  for (;;) {
    Eigen::VectorXd z(d);
    for (int i = 0; i < d; ++i) z[i] = idx[i];
    cand.push_back(Vec(basis * z * step));
    int i = 0;
    while (i < d && ++idx[i] > extent) idx[i++] = -extent;
    if (i == d) break;
  }
  std::stable_sort(cand.begin(), cand.end(), [](const Vec& a, const Vec& b) {
    const double na = a.squaredNorm();
    const double nb = b.squaredNorm();
    if (std::abs(na - nb) > 1e-9 * std::max(1.0, na)) return na < nb;
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                        b.data() + b.size());
  });
  std::vector<Point> pts;
  for (long long i = 0; i < n; ++i) pts.push_back(Point{cand[static_cast<std::size_t>(i)]});
  return pts;
}

}  // namespace

std::vector<Point> gen_separated(const KPParams& p, const RngSpec& rng) {
  const Space& s = p.space;
  std::vector<Point> pts;
  if (s.curvature == Curvature::Euclidean) {
    pts = lattice_patch(s, p.n, p.lambda);
  } else {
    RandomStream stream(rng);
    const double cap = s.curvature == Curvature::Spherical ? kPi / 2 - 1e-9
                                                           : std::numeric_limits<double>::infinity();
    double radius = std::min(cap, p.lambda);
    pts.push_back(origin(s));
    int misses = 0;
    std::uint64_t draws = 0;
    constexpr int kMissesBeforeGrowth = 500;
    constexpr std::uint64_t kDrawBudget = 20'000'000;
    auto sampler = std::make_unique<BallSampler>(s, Ball::make(s, origin(s), radius));
    while (static_cast<long long>(pts.size()) < p.n) {
      if (++draws > kDrawBudget) {
        throw InfeasibleError("greedy packing could not place " + std::to_string(p.n) +
                              " lambda-separated points");
      }
      Point x = sampler->sample(stream);
      const bool ok = std::all_of(pts.begin(), pts.end(), [&](const Point& q) {
        return detail::raw_distance(s, q.coords, x.coords) >= p.lambda;
      });
      if (ok) {
        pts.push_back(std::move(x));
        misses = 0;
      } else if (++misses >= kMissesBeforeGrowth && radius < cap) {
        radius = std::min(cap, radius * 1.05);
        sampler = std::make_unique<BallSampler>(s, Ball::make(s, origin(s), radius));
        misses = 0;
      }
    }
  }
  if (min_pairwise_distance(s, pts) < p.lambda) {
    throw InfeasibleError("separated configuration failed validation");
  }
  return pts;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Violated: return "violated";
  }
  return "?";
}

KPReport verify_kp_instance(const KPParams& p, std::span<const Point> pts_p,
                            std::span<const Point> pts_q, std::uint64_t n_mc, const RngSpec& rng) {
  if (static_cast<long long>(pts_p.size()) != p.n) {
    throw InputError("P must contain exactly N points");
  }
  validate_contraction(p.space, pts_p, pts_q, p.lambda);

  KPReport rep;
  rep.params = p;
  rep.rng = rng;
  rep.n_mc = n_mc;
  rep.threshold = threshold_N(p);
  rep.below_threshold = p.n < rep.threshold;
  rep.f_lower = f_lower_bound(p);
  rep.g_upper = g_upper_bound(p);

  const BallIntersection p_dual = dual_of_points(p.space, pts_p, p.delta);
  const BallIntersection q_dual = dual_of_points(p.space, pts_q, p.delta);
  rep.vol_p_dual = estimate_volume(p_dual.oracle(), n_mc, rng.child(0));
  rep.vol_q_dual = estimate_volume(q_dual.oracle(), n_mc, rng.child(1));

  const double sig = kVerdictSigmas;
  if (rep.vol_p_dual.upper(sig) < rep.vol_q_dual.lower(sig)) {
    rep.verdict = Verdict::Verified;
  } else if (rep.vol_p_dual.lower(sig) > rep.vol_q_dual.upper(sig)) {
    rep.verdict = Verdict::Violated;
  } else {
    rep.verdict = Verdict::Inconclusive;
  }
  rep.sandwich_ok = rep.vol_p_dual.lower(sig) <= rep.g_upper && rep.g_upper < rep.f_lower &&
                    rep.f_lower <= rep.vol_q_dual.upper(sig);

  // Same set through the union-of-balls representation.
  const UnionOfBalls balls = UnionOfBalls::congruent(p.space, pts_p, 0.5 * p.lambda);
  const BallIntersection via_union = dual_of_union(balls, p.delta + 0.5 * p.lambda);
  RandomStream probe_rng(rng.child(2));
  Ball probe_ball = p_dual.oracle().bound();
  probe_ball.radius = std::min(probe_ball.radius * 1.25,
                               p.space.curvature == Curvature::Spherical ? kPi : 1e300);
  const BallSampler probes(p.space, probe_ball);
  rep.union_identity_probes = 1000;
  for (std::uint64_t i = 0; i < rep.union_identity_probes; ++i) {
    const Point x = probes.sample(probe_rng);
    if (p_dual.contains(x) != via_union.contains(x)) ++rep.union_identity_mismatches;
  }
  return rep;
}

UnionOfBalls random_union(const Space& s, double r, double center_frac, double lo_frac,
                          double hi_frac, RandomStream& rng) {
  const int n = 1 + static_cast<int>(rng.below(5));
  const BallSampler centers(s, Ball::make(s, origin(s), center_frac * r));
  std::vector<Ball> balls;
  for (int i = 0; i < n; ++i) {
    const Point c = centers.sample(rng);
    balls.push_back(Ball::make(s, c, rng.uniform(lo_frac * r, hi_frac * r)));
  }
  return UnionOfBalls::make(s, std::move(balls));
}

MainReport verify_main_random(const Space& s, double r, int trials, std::uint64_t n_mc,
                              const RngSpec& rng) {
  if (!s.admissible_dual_radius(r)) throw InputError("inadmissible dual radius");
  MainReport rep;
  rep.space = s;
  rep.r = r;
  rep.trials = trials;
  rep.n_mc = n_mc;
  rep.rng = rng;
  for (int t = 0; t < trials; ++t) {
    const RngSpec trial_rng = rng.child(static_cast<std::uint64_t>(t));
    RandomStream stream(trial_rng.child(0));
    const UnionOfBalls a = random_union(s, r, 0.8, 0.1, 0.4, stream);

    MainTrial tr;
    tr.n_balls = static_cast<int>(a.balls.size());
    tr.vol_a = estimate_volume(a.oracle(), n_mc, trial_rng.child(1));
    if (tr.vol_a.hits == 0) {
      rep.details.push_back(tr);
      continue;
    }
    tr.ball_radius = ball_volume_inverse(s, tr.vol_a.value);
    const double sigma_radius = tr.vol_a.std_err / sphere_area(s, tr.ball_radius);

    const BallIntersection a_dual = dual_of_union_mixed(a, r);
    tr.vol_a_dual = estimate_volume(a_dual.oracle(), n_mc, trial_rng.child(2));

    const double b_radius = r - tr.ball_radius;
    double sigma_b = 0.0;
    if (b_radius > 0.0) {
      tr.vol_b_dual = ball_volume(s, b_radius);
      sigma_b = sphere_area(s, b_radius) * sigma_radius;
    }
    tr.sigma = std::hypot(tr.vol_a_dual.std_err, sigma_b);
    tr.excess = tr.vol_a_dual.value - tr.vol_b_dual;
    // Single balls are sampled exactly (sigma = 0); ignore rounding-level excess.
    const double floor = 1e-12 * std::max(tr.vol_b_dual, tr.vol_a_dual.value);
    tr.violation = tr.excess > kVerdictSigmas * tr.sigma + floor;
    if (tr.sigma > 0.0) rep.max_z = std::max(rep.max_z, tr.excess / tr.sigma);
    if (tr.violation) ++rep.violations;
    rep.details.push_back(tr);
  }
  return rep;
}

namespace {

// Walks from an interior point y0 along a random geodesic until leaving K,
// then bisects to the last interior point.
Point boundary_point(const SetOracle& k, const Point& y0, RandomStream& rng) {
  const Space& s = k.space();
  Vec u(s.dim);
  for (int i = 0; i < s.dim; ++i) u[i] = rng.normal();
  u.normalize();
  auto along = [&](double t) { return from_local(s, y0, t * u); };
  const double reach = 2.0 * k.bound().radius + 1e-9;
  double inside = 0.0;
  double outside = std::max(1e-6, 0.125 * k.bound().radius);
  while (k.contains(along(outside))) {
    inside = outside;
    outside *= 2.0;
    if (outside > reach) return along(inside);
  }
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (inside + outside);
    (k.contains(along(mid)) ? inside : outside) = mid;
  }
  return along(inside);
}

}  // namespace

CoreLemmaReport verify_core_lemma(const Space& s, double r, int trials, const RngSpec& rng,
                                  int samples_per_trial, std::uint64_t inner_samples) {
  if (!s.admissible_dual_radius(r)) throw InputError("inadmissible dual radius");
  CoreLemmaReport rep;
  rep.space = s;
  rep.r = r;
  rep.trials = trials;
  rep.samples_per_trial = samples_per_trial;
  rep.inner_samples = inner_samples;
  rep.rng = rng;
  for (int t = 0; t < trials; ++t) {
    const RngSpec trial_rng = rng.child(static_cast<std::uint64_t>(t));
    RandomStream stream(trial_rng.child(0));
    // Centres near o keep o inside K^r, so K^r is nonempty.
    const UnionOfBalls k = random_union(s, r, 0.3, 0.1, 0.3, stream);
    const BallSampler hs(s, Ball::make(s, origin(s), 0.6 * r));
    Point a = hs.sample(stream);
    Point b = hs.sample(stream);
    if (detail::raw_distance(s, a.coords, b.coords) < 1e-9) {
      ++rep.skipped_trials;
      continue;
    }
    const OrientedHyperplane h = bisector(s, a, b);
    const SetOracle tk = symmetrize(k.oracle(), h);
    const SetOracle tk_dual = symmetrize(dual_of_union_mixed(k, r).oracle(), h);

    for (int j = 0; j < samples_per_trial; ++j) {
      const auto y0 = sample_member(tk_dual, stream, 1'000'000);
      if (!y0) {
        ++rep.skipped_trials;
        break;
      }
      const Point y = boundary_point(tk_dual, *y0, stream);
      const SubsetResult res =
          subset_of_ball(tk, y, r, inner_samples, trial_rng.child(1 + static_cast<std::uint64_t>(j)));
      ++rep.checks;
      if (res.refuted) ++rep.refutations;
    }
  }
  return rep;
}

}  // namespace curvball
