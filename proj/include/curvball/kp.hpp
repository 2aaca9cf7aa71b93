#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvball/geom_core.hpp"
#include "curvball/measure.hpp"
#include "curvball/oracle_sets.hpp"
#include "curvball/rng.hpp"

namespace curvball {

// Parameters of a uniform-contraction instance. make() enforces the
// hypotheses required in the chosen geometry.
struct KPParams {
  Space space;
  long long n = 1;
  double lambda = 0.0;
  double delta = 0.0;
  std::optional<double> k;  // hyperbolic scale; always set for kappa = -1 after make()

  static KPParams make(const Space& s, long long n, double lambda, double delta,
                       std::optional<double> k = std::nullopt);
  double k_value() const;
};

// Unrounded threshold expression, and its ceiling.
double threshold_value(const Space& s, std::optional<double> k = std::nullopt);
long long threshold_N(const KPParams& p);

// Inner radius of the ball certified inside every Q^delta, and its volume.
double f_lower_radius(const KPParams& p);
double f_lower_bound(const KPParams& p);
// Radius of the ball whose volume bounds every P^delta (may be negative), and
// its volume with V(empty) = 0.
double g_upper_radius(const KPParams& p);
double g_upper_bound(const KPParams& p);

struct PropCheck {
  enum class Status { Holds, Fails, PreconditionUnmet };
  Status status = Status::PreconditionUnmet;
  double lhs = 0.0;
  double mu = 0.0;
  std::string note;

  bool holds() const { return status == Status::Holds; }
};

std::string to_string(PropCheck::Status s);

// (1/(2 e d pi^{d-1}))^{1/d} N^{1/d} lambda < mu, for mu from mu_solve on S^d.
PropCheck check_prop_spherical(int d, long long n, double lambda);
// (2k / sinh 2k)^{(d-1)/d} N^{1/d} lambda/2 < mu, for mu from mu_solve on H^d.
PropCheck check_prop_hyperbolic(int d, double k, long long n, double lambda, double delta);

// N points uniform in B[o, lambda/2]; pairwise distances <= lambda.
std::vector<Point> gen_contracted(const KPParams& p, const RngSpec& rng);
// N points with pairwise distances >= lambda: lattice patch in E^d, greedy
// packing in an expanding cap/ball otherwise. Throws InfeasibleError.
std::vector<Point> gen_separated(const KPParams& p, const RngSpec& rng);

double min_pairwise_distance(const Space& s, std::span<const Point> pts);
double max_pairwise_distance(const Space& s, std::span<const Point> pts);

// Throws InputError unless Q is a uniform contraction of P at lambda.
void validate_contraction(const Space& s, std::span<const Point> p, std::span<const Point> q,
                          double lambda);

enum class Verdict { Verified, Inconclusive, Violated };
std::string to_string(Verdict v);

inline constexpr double kVerdictSigmas = 3.0;

struct KPReport {
  KPParams params;
  RngSpec rng;
  std::uint64_t n_mc = 0;
  VolumeEstimate vol_p_dual;
  VolumeEstimate vol_q_dual;
  double f_lower = 0.0;
  double g_upper = 0.0;
  long long threshold = 0;
  bool below_threshold = false;
  bool sandwich_ok = false;
  std::uint64_t union_identity_probes = 0;
  std::uint64_t union_identity_mismatches = 0;
  Verdict verdict = Verdict::Inconclusive;
};

KPReport verify_kp_instance(const KPParams& p, std::span<const Point> pts_p,
                            std::span<const Point> pts_q, std::uint64_t n_mc, const RngSpec& rng);

struct MainTrial {
  int n_balls = 0;
  VolumeEstimate vol_a;
  double ball_radius = 0.0;  // radius of the ball with the same volume as A
  VolumeEstimate vol_a_dual;
  double vol_b_dual = 0.0;
  double sigma = 0.0;  // combined standard error of the comparison
  double excess = 0.0; // V(A^r) - V(B^r)
  bool violation = false;
};

struct MainReport {
  Space space;
  double r = 0.0;
  int trials = 0;
  std::uint64_t n_mc = 0;
  RngSpec rng;
  int violations = 0;
  double max_z = 0.0;
  std::vector<MainTrial> details;
};

// Random unions of balls A; compares V(A^r) with V(B^r) for the ball B with
// V(B) = V(A). Flags excess beyond 3 combined standard errors.
MainReport verify_main_random(const Space& s, double r, int trials, std::uint64_t n_mc,
                              const RngSpec& rng);

struct CoreLemmaReport {
  Space space;
  double r = 0.0;
  int trials = 0;
  int samples_per_trial = 0;
  std::uint64_t inner_samples = 0;
  RngSpec rng;
  std::uint64_t checks = 0;
  std::uint64_t refutations = 0;
  int skipped_trials = 0;
};

// Refutation search for tau_H(K^r) subset (tau_H K)^r over random unions of
// balls K and hyperplanes H, using boundary points y of tau_H(K^r).
CoreLemmaReport verify_core_lemma(const Space& s, double r, int trials, const RngSpec& rng,
                                  int samples_per_trial = 100,
                                  std::uint64_t inner_samples = 1000);

// Random union of 1-5 balls with centres in B[o, center_frac r] and radii in
// [lo_frac r, hi_frac r].
UnionOfBalls random_union(const Space& s, double r, double center_frac, double lo_frac,
                          double hi_frac, RandomStream& rng);

}  // namespace curvball
