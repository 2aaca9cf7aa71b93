#include "curvball/measure.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "curvball/errors.hpp"
#include "curvball/parallel.hpp"

namespace curvball {

namespace {

constexpr int kRadialNodes = 256;
// Composite Gauss-Legendre panel width; the integrands are entire, so 20
// nodes per panel reach machine precision.
constexpr double kPanelWidth = 0.25;

double int_pow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// Radial density of the volume element, up to the factor d * omega_d.
double radial_density(Curvature c, int d, double t) {
  switch (c) {
    case Curvature::Euclidean: return int_pow(t, d - 1);
    case Curvature::Spherical: return int_pow(std::sin(t), d - 1);
    case Curvature::Hyperbolic: return int_pow(std::sinh(t), d - 1);
  }
  return 0.0;
}

double radial_integral(const Space& s, double a, double b) {
  auto f = [&](double t) { return radial_density(s.curvature, s.dim, t); };
  using boost::math::quadrature::gauss;
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / kPanelWidth)));
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) sum += gauss<double, 20>::integrate(f, a + i * h, a + (i + 1) * h);
  return sum;
}

void check_radius(const Space& s, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw InputError("ball radius must be a finite nonnegative number");
  }
  if (s.curvature == Curvature::Spherical && r > std::numbers::pi) {
    throw InputError("spherical ball radius exceeds pi");
  }
}

Vec random_unit(int d, RandomStream& rng) {
  Vec u(d);
  double n2 = 0.0;
  do {
    for (int i = 0; i < d; ++i) u[i] = rng.normal();
    n2 = u.squaredNorm();
  } while (n2 < 1e-300);
  return u / std::sqrt(n2);
}

}  // namespace

double unit_ball_volume(int d) {
  if (d < 1) throw InputError("unit_ball_volume needs d >= 1");
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double ball_volume(const Space& s, double r) {
  check_radius(s, r);
  if (r == 0.0) return 0.0;
  const double omega = unit_ball_volume(s.dim);
  if (s.curvature == Curvature::Euclidean) return omega * std::pow(r, s.dim);
  return s.dim * omega * radial_integral(s, 0.0, r);
}

double ball_volume(const Space& s, const Ball& b) {
  return b.empty ? 0.0 : ball_volume(s, b.radius);
}

double sphere_area(const Space& s, double r) {
  check_radius(s, r);
  return s.dim * unit_ball_volume(s.dim) * radial_density(s.curvature, s.dim, r);
}

double total_volume(const Space& s) {
  if (s.curvature != Curvature::Spherical) return std::numeric_limits<double>::infinity();
  return (s.dim + 1) * unit_ball_volume(s.dim + 1);
}

double ball_volume_inverse(const Space& s, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InputError("ball_volume_inverse needs a finite positive volume");
  }
  if (s.curvature == Curvature::Euclidean) {
    return std::pow(v / unit_ball_volume(s.dim), 1.0 / s.dim);
  }
  double lo = 0.0;
  double hi;
  if (s.curvature == Curvature::Spherical) {
    const double total = total_volume(s);
    if (v > total * (1.0 + 1e-12)) throw InputError("volume exceeds the volume of the sphere");
    if (v >= total) return std::numbers::pi;
    hi = std::numbers::pi;
  } else {
    hi = 1.0;
    while (ball_volume(s, hi) < v) {
      lo = hi;
      hi *= 2.0;
      if (hi > 700.0) throw InputError("hyperbolic volume too large to invert");
    }
  }
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (ball_volume(s, mid) < v ? lo : hi) = mid;
  }
  double r = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double slope = sphere_area(s, r);
    if (!(slope > 0.0)) break;
    const double next = r - (ball_volume(s, r) - v) / slope;
    if (!(next >= lo && next <= hi)) break;
    r = next;
  }
  return r;
}

MuSolution mu_solve(const Space& s, long long n, double lambda) {
  if (n < 1) throw InputError("N must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("lambda must be positive");
  MuSolution out;
  if (s.curvature == Curvature::Euclidean) {
    out.mu = 0.5 * std::pow(static_cast<double>(n), 1.0 / s.dim) * lambda;
    out.target_volume = ball_volume(s, out.mu);
    return out;
  }
  out.target_volume = static_cast<double>(n) * ball_volume(s, 0.5 * lambda);
  if (n == 1) {
    out.mu = 0.5 * lambda;
    return out;
  }
  if (s.curvature == Curvature::Spherical && out.target_volume > total_volume(s)) {
    out.saturated = true;
    out.mu = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.mu = ball_volume_inverse(s, out.target_volume);
  return out;
}

BallSampler::BallSampler(const Space& s, const Ball& ball) : space_(s), ball_(ball) {
  validate(s, ball.center);
  if (ball.empty) return;
  check_radius(s, ball.radius);
  volume_ = ball_volume(s, ball.radius);
  if (s.curvature == Curvature::Euclidean || ball.radius == 0.0) return;

  step_ = ball.radius / kRadialNodes;
  cumulative_.assign(kRadialNodes + 1, 0.0);
  density_.assign(kRadialNodes + 1, 0.0);
  auto f = [&](double t) { return radial_density(s.curvature, s.dim, t); };
  for (int i = 0; i <= kRadialNodes; ++i) {
    const double t = i * step_;
    density_[i] = f(t);
    if (i > 0) {
      cumulative_[i] = cumulative_[i - 1] +
                       boost::math::quadrature::gauss<double, 10>::integrate(f, t - step_, t);
    }
  }
}

double BallSampler::sample_radius(double u) const {
  if (space_.curvature == Curvature::Euclidean) {
    return ball_.radius * std::pow(u, 1.0 / space_.dim);
  }
  if (cumulative_.empty()) return 0.0;
  const double target = u * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  const auto i = static_cast<std::size_t>(
      std::clamp<std::ptrdiff_t>(it - cumulative_.begin() - 1, 0, kRadialNodes - 1));
  const double f0 = cumulative_[i];
  const double f1 = cumulative_[i + 1];
  const double m0 = step_ * density_[i];
  const double m1 = step_ * density_[i + 1];
  const double mass = f1 - f0;
  if (!(mass > 0.0)) return (i + 0.5) * step_;

  // Solve the cubic Hermite interpolant H(tau) = target on [0, 1].
  double lo = 0.0;
  double hi = 1.0;
  double tau = std::clamp((target - f0) / mass, 0.0, 1.0);
  for (int iter = 0; iter < 8; ++iter) {
    const double t2 = tau * tau;
    const double t3 = t2 * tau;
    const double h = (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + tau) * m0 +
                     (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * m1;
    const double dh = (6 * t2 - 6 * tau) * f0 + (3 * t2 - 4 * tau + 1) * m0 +
                      (-6 * t2 + 6 * tau) * f1 + (3 * t2 - 2 * tau) * m1;
    const double resid = h - target;
    (resid < 0.0 ? lo : hi) = tau;
    double next = dh > 0.0 ? tau - resid / dh : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - tau) < 1e-15) {
      tau = next;
      break;
    }
    tau = next;
  }
  return std::min(ball_.radius, (static_cast<double>(i) + tau) * step_);
}

Point BallSampler::sample(RandomStream& rng) const {
  if (ball_.empty) throw DegenerateError("cannot sample from an empty ball");
  const double rho = sample_radius(rng.uniform());
  const Vec u = random_unit(space_.dim, rng);
  if (space_.curvature == Curvature::Euclidean) return Point{ball_.center.coords + rho * u};
  return transport_from_origin(space_, ball_.center, from_polar(space_, u, rho));
}

Point sample_uniform_ball(const Space& s, const Point& c, double r, const RngSpec& rng) {
  RandomStream stream(rng);
  return BallSampler(s, Ball::make(s, c, r)).sample(stream);
}

VolumeEstimate make_estimate(std::uint64_t hits, std::uint64_t n, double sampling_volume) {
  VolumeEstimate e;
  e.n_samples = n;
  e.hits = hits;
  e.sampling_ball_volume = sampling_volume;
  if (n == 0) return e;
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  e.value = sampling_volume * p;
  e.std_err = sampling_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  e.ci_lo = std::max(0.0, e.value - 1.96 * e.std_err);
  e.ci_hi = e.value + 1.96 * e.std_err;
  return e;
}

VolumeEstimate estimate_volume(const SetOracle& k, const Ball& s_ball, std::uint64_t n,
                               const RngSpec& rng) {
  const Space& s = k.space();
  if (k.known_empty() || s_ball.empty || n == 0) {
    return make_estimate(0, n, ball_volume(s, s_ball));
  }
  const BallSampler sampler(s, s_ball);
  const std::uint64_t chunks = (n + kChunkSamples - 1) / kChunkSamples;
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel_for(chunks, [&](std::size_t c) {
    RandomStream stream(rng.child(c));
    const std::uint64_t begin = c * kChunkSamples;
    const std::uint64_t count = std::min(kChunkSamples, n - begin);
    std::uint64_t h = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
      const Point x = sampler.sample(stream);
      if (k.contains(x)) {
        if (!k.bound().contains(s, x, kModelTol)) {
          throw BoundViolation("set oracle produced a member outside its bounding ball");
        }
        ++h;
      }
    }
    hits[c] = h;
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return make_estimate(total, n, sampler.volume());
}

VolumeEstimate estimate_volume(const SetOracle& k, std::uint64_t n, const RngSpec& rng) {
  return estimate_volume(k, k.bound(), n, rng);
}

}  // namespace curvball
