#include "curvball/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>

#include "curvball/errors.hpp"
#include "curvball/exact2d.hpp"
#include "curvball/io.hpp"
#include "curvball/kp.hpp"
#include "curvball/measure.hpp"
#include "curvball/minimax.hpp"
#include "curvball/oracle_sets.hpp"
#include "curvball/svg.hpp"

namespace curvball {

namespace {

struct Common {
  std::string space = "euclidean";
  int dim = 2;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 1;
  bool timing = false;
};

void add_common(CLI::App* app, Common& c, bool with_space) {
  if (with_space) {
    app->add_option("--space", c.space, "euclidean | spherical | hyperbolic")
        ->check(CLI::IsMember({"euclidean", "spherical", "hyperbolic"}));
    app->add_option("-d,--dim", c.dim, "dimension d >= 2");
  }
  app->add_option("--format", c.format, "json | text")->check(CLI::IsMember({"json", "text"}));
  app->add_option("--out", c.out, "write the report to this file instead of stdout");
  app->add_option("--seed", c.seed, "random seed");
  app->add_flag("--timing", c.timing, "include wall-clock time (breaks byte-identical reruns)");
}

Space space_of(const Common& c, std::optional<double> k = std::nullopt) {
  return Space::from_kappa(static_cast<int>(curvature_from_string(c.space)), c.dim, k);
}

void flatten(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    }
  } else {
    os << prefix << ": " << j.dump() << "\n";
  }
}

void emit(const Common& c, Json report, double seconds, std::ostream& out) {
  if (c.timing) report["wall_clock_s"] = seconds;
  std::string text;
  if (c.format == "json") {
    text = dump(report);
  } else {
    std::ostringstream os;
    flatten(report, "", os);
    text = os.str();
  }
  if (c.out.empty()) {
    out << text;
  } else {
    std::ofstream f(c.out);
    if (!f) throw InputError("cannot write " + c.out);
    f << text;
  }
}

Json header(const std::vector<std::string>& args) {
  Json j;
  j["tool"] = "curvball";
  j["version"] = kVersion;
  j["command"] = args;
  return j;
}

std::optional<double> closed_form_ball_volume(const Space& s, double r) {
  const double pi = std::numbers::pi;
  if (s.curvature == Curvature::Spherical) {
    if (s.dim == 2) return 2.0 * pi * (1.0 - std::cos(r));
    if (s.dim == 3) return pi * (2.0 * r - std::sin(2.0 * r));
  }
  if (s.curvature == Curvature::Hyperbolic) {
    if (s.dim == 2) return 2.0 * pi * (std::cosh(r) - 1.0);
    if (s.dim == 3) return pi * (std::sinh(2.0 * r) - 2.0 * r);
  }
  return std::nullopt;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Verified: return kExitOk;
    case Verdict::Inconclusive: return kExitInconclusive;
    case Verdict::Violated: return kExitViolation;
  }
  return kExitUsage;
}

int exit_for(PropCheck::Status s) {
  switch (s) {
    case PropCheck::Status::Holds: return kExitOk;
    case PropCheck::Status::Fails: return kExitViolation;
    case PropCheck::Status::PreconditionUnmet: return kExitInconclusive;
  }
  return kExitUsage;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constant-curvature r-dual sets and Kneser-Poulsen verification", "curvball"};
  app.require_subcommand(1);

  // ball-volume
  Common bv;
  std::optional<double> bv_r;
  std::optional<double> bv_inverse;
  auto* cmd_bv = app.add_subcommand("ball-volume", "volume of a geodesic ball, or its inverse");
  add_common(cmd_bv, bv, true);
  auto* bv_r_opt = cmd_bv->add_option("-r,--radius", bv_r, "ball radius");
  auto* bv_inv_opt = cmd_bv->add_option("--inverse", bv_inverse, "volume to invert");
  bv_r_opt->excludes(bv_inv_opt);

  // dual-volume
  Common dv;
  std::string dv_points;
  double dv_r = 1.0;
  std::uint64_t dv_nmc = 1'000'000;
  auto* cmd_dv = app.add_subcommand("dual-volume", "Monte Carlo volume of the r-dual of a point set");
  add_common(cmd_dv, dv, false);
  cmd_dv->add_option("--points", dv_points, "point set JSON file")->required();
  cmd_dv->add_option("-r,--radius", dv_r, "dual radius")->required();
  cmd_dv->add_option("--n-mc", dv_nmc, "Monte Carlo samples");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "statistical verification suites");
  cmd_verify->require_subcommand(1);

  Common vm;
  double vm_r = 1.0;
  int vm_trials = 200;
  std::uint64_t vm_nmc = 100'000;
  bool vm_details = false;
  auto* cmd_main = cmd_verify->add_subcommand("main", "dual-volume inequality on random unions of balls");
  add_common(cmd_main, vm, true);
  cmd_main->add_option("-r,--radius", vm_r, "dual radius")->required();
  cmd_main->add_option("--trials", vm_trials, "number of random sets");
  cmd_main->add_option("--n-mc", vm_nmc, "Monte Carlo samples per volume");
  cmd_main->add_flag("--details", vm_details, "include per-trial records");

  Common vc;
  double vc_r = 1.0;
  int vc_trials = 100;
  int vc_samples = 100;
  std::uint64_t vc_inner = 1000;
  auto* cmd_core = cmd_verify->add_subcommand("core-lemma", "refutation search for the symmetrization inclusion");
  add_common(cmd_core, vc, true);
  cmd_core->add_option("-r,--radius", vc_r, "dual radius")->required();
  cmd_core->add_option("--trials", vc_trials, "random (K, H) pairs");
  cmd_core->add_option("--samples", vc_samples, "boundary points y per trial");
  cmd_core->add_option("--inner", vc_inner, "samples of tau_H K per y");

  Common vk;
  long long vk_n = 0;
  double vk_lambda = 0.0;
  double vk_delta = 0.0;
  std::optional<double> vk_k;
  std::uint64_t vk_nmc = 1'000'000;
  std::string vk_pfile;
  std::string vk_qfile;
  auto* cmd_kp = cmd_verify->add_subcommand("kp", "uniform-contraction instance");
  add_common(cmd_kp, vk, true);
  cmd_kp->add_option("-N", vk_n, "number of points")->required();
  cmd_kp->add_option("--lambda", vk_lambda, "separating value")->required();
  cmd_kp->add_option("--delta", vk_delta, "dual radius")->required();
  cmd_kp->add_option("-k", vk_k, "hyperbolic scale k");
  cmd_kp->add_option("--n-mc", vk_nmc, "Monte Carlo samples per dual");
  cmd_kp->add_option("--p-file", vk_pfile, "separated point set (default: generated)");
  cmd_kp->add_option("--q-file", vk_qfile, "contracted point set (default: generated)");

  Common vp;
  long long vp_n = 1;
  double vp_lambda = 0.0;
  std::optional<double> vp_delta;
  std::optional<double> vp_k;
  auto* cmd_props = cmd_verify->add_subcommand("props", "mu inequalities and threshold arithmetic");
  add_common(cmd_props, vp, true);
  cmd_props->add_option("-N", vp_n, "number of points")->required();
  cmd_props->add_option("--lambda", vp_lambda, "separating value")->required();
  cmd_props->add_option("--delta", vp_delta, "dual radius");
  cmd_props->add_option("-k", vp_k, "hyperbolic scale k");

  // render
  Common rd;
  std::string rd_kind = "dual";
  std::string rd_points;
  double rd_r = 1.0;
  double rd_ball = 0.3;
  std::vector<double> rd_normal;
  double rd_offset = 0.0;
  long long rd_n = 6;
  double rd_lambda = 1.0;
  double rd_delta = 1.0;
  std::optional<double> rd_k;
  auto* cmd_render = app.add_subcommand("render", "SVG picture of a planar instance");
  add_common(cmd_render, rd, true);
  cmd_render->add_option("--kind", rd_kind, "dual | symmetrize | kp")
      ->check(CLI::IsMember({"dual", "symmetrize", "kp"}));
  cmd_render->add_option("--points", rd_points, "point set JSON file (dual, symmetrize)");
  cmd_render->add_option("-r,--radius", rd_r, "dual radius (dual)");
  cmd_render->add_option("--ball-radius", rd_ball, "ball radius of K (symmetrize)");
  cmd_render->add_option("--normal", rd_normal, "hyperplane normal, ambient coordinates")->delimiter(',');
  cmd_render->add_option("--offset", rd_offset, "hyperplane offset (euclidean)");
  cmd_render->add_option("-N", rd_n, "number of points (kp)");
  cmd_render->add_option("--lambda", rd_lambda, "separating value (kp)");
  cmd_render->add_option("--delta", rd_delta, "dual radius (kp)");
  cmd_render->add_option("-k", rd_k, "hyperbolic scale k (kp)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  try {
    if (cmd_bv->parsed()) {
      const Space s = space_of(bv);
      Json rep = header(args);
      rep["params"] = to_json(s);
      if (bv_inverse) {
        const double r = ball_volume_inverse(s, *bv_inverse);
        rep["params"]["volume"] = *bv_inverse;
        rep["radius"] = r;
        if (auto cf = closed_form_ball_volume(s, r)) rep["closed_form_volume_at_radius"] = *cf;
      } else {
        if (!bv_r) throw InputError("ball-volume needs -r or --inverse");
        rep["params"]["r"] = *bv_r;
        rep["volume"] = ball_volume(s, *bv_r);
        if (auto cf = closed_form_ball_volume(s, *bv_r)) rep["closed_form"] = *cf;
      }
      rep["exit_code"] = kExitOk;
      emit(bv, rep, elapsed(), out);
      return kExitOk;
    }

    if (cmd_dv->parsed()) {
      const PointSetFile file = load_point_set(dv_points);
      const Space& s = file.space;
      const RngSpec rng{dv.seed, 0};
      const BallIntersection dual = dual_of_points(s, file.points, dv_r);
      Json rep = header(args);
      rep["params"] = to_json(s);
      rep["params"]["r"] = dv_r;
      rep["params"]["n_points"] = file.points.size();
      rep["params"]["n_mc"] = dv_nmc;
      rep["rng"] = to_json(rng);
      const EmptinessResult em = is_empty(dual, 10'000, rng.child(1));
      switch (em.kind) {
        case EmptinessResult::Kind::EmptyCertified: rep["emptiness"] = "empty-certified"; break;
        case EmptinessResult::Kind::NonemptyWitness:
          rep["emptiness"] = "nonempty";
          rep["witness"] = to_json(*em.witness);
          break;
        case EmptinessResult::Kind::Unknown: rep["emptiness"] = "unknown"; break;
      }
      if (em.kind == EmptinessResult::Kind::EmptyCertified) {
        rep["estimate"] = to_json(make_estimate(0, dv_nmc, 0.0));
      } else {
        rep["estimate"] = to_json(estimate_volume(dual.oracle(), dv_nmc, rng.child(0)));
      }
      if (file.points.size() == 1) rep["exact"] = ball_volume(s, dv_r);
      if (s.curvature == Curvature::Euclidean && s.dim == 2) {
        std::vector<exact2d::P2> centers;
        for (const auto& p : file.points) centers.push_back(p.coords.head<2>());
        rep["exact"] = exact2d::arc_polygon_area(exact2d::disk_polygon(centers, dv_r));
      }
      rep["exit_code"] = kExitOk;
      emit(dv, rep, elapsed(), out);
      return kExitOk;
    }

    if (cmd_main->parsed()) {
      const Space s = space_of(vm);
      const MainReport r = verify_main_random(s, vm_r, vm_trials, vm_nmc, RngSpec{vm.seed, 0});
      Json rep = header(args);
      const int code = r.violations == 0 ? kExitOk : kExitViolation;
      rep["result"] = to_json(r, vm_details);
      rep["verdict"] = r.violations == 0 ? "no-violation" : "violation";
      rep["exit_code"] = code;
      emit(vm, rep, elapsed(), out);
      return code;
    }

    if (cmd_core->parsed()) {
      const Space s = space_of(vc);
      const CoreLemmaReport r =
          verify_core_lemma(s, vc_r, vc_trials, RngSpec{vc.seed, 0}, vc_samples, vc_inner);
      Json rep = header(args);
      const int code = r.refutations == 0 ? kExitOk : kExitViolation;
      rep["result"] = to_json(r);
      rep["verdict"] = r.refutations == 0 ? "no-violation" : "violation";
      rep["exit_code"] = code;
      emit(vc, rep, elapsed(), out);
      return code;
    }

    if (cmd_kp->parsed()) {
      const Space s = space_of(vk);
      const KPParams p = KPParams::make(s, vk_n, vk_lambda, vk_delta, vk_k);
      const RngSpec rng{vk.seed, 0};
      std::vector<Point> pts_p;
      std::vector<Point> pts_q;
      auto load = [&](const std::string& path) {
        PointSetFile f = load_point_set(path);
        if (!(f.space == p.space)) throw InputError(path + " is not in the requested space");
        return f.points;
      };
      pts_p = vk_pfile.empty() ? gen_separated(p, rng.child(10)) : load(vk_pfile);
      pts_q = vk_qfile.empty() ? gen_contracted(p, rng.child(11)) : load(vk_qfile);
      const KPReport r = verify_kp_instance(p, pts_p, pts_q, vk_nmc, rng.child(12));
      Json rep = header(args);
      const int code = exit_for(r.verdict);
      rep["result"] = to_json(r);
      rep["verdict"] = to_string(r.verdict);
      rep["exit_code"] = code;
      emit(vk, rep, elapsed(), out);
      return code;
    }

    if (cmd_props->parsed()) {
      const Space s = space_of(vp, vp_k);
      Json rep = header(args);
      rep["params"] = to_json(s);
      rep["params"]["N"] = vp_n;
      rep["params"]["lambda"] = vp_lambda;
      if (vp_delta) rep["params"]["delta"] = *vp_delta;
      const MuSolution mu = mu_solve(s, vp_n, vp_lambda);
      rep["mu"] = mu.saturated ? Json(nullptr) : Json(mu.mu);
      int code = kExitOk;
      if (s.curvature == Curvature::Spherical) {
        const PropCheck c = check_prop_spherical(s.dim, vp_n, vp_lambda);
        rep["proposition"] = to_json(c);
        code = exit_for(c.status);
      } else if (s.curvature == Curvature::Hyperbolic) {
        if (!vp_delta) throw InputError("hyperbolic props need --delta");
        const double k = vp_k ? *vp_k : std::max(*vp_delta * 1.0001, 1.0);
        const PropCheck c = check_prop_hyperbolic(s.dim, k, vp_n, vp_lambda, *vp_delta);
        rep["params"]["k"] = k;
        rep["proposition"] = to_json(c);
        code = exit_for(c.status);
      }
      if (vp_delta) {
        try {
          const KPParams p = KPParams::make(s, vp_n, vp_lambda, *vp_delta, vp_k);
          Json b;
          b["threshold_value"] = threshold_value(p.space, p.k);
          b["threshold_N"] = threshold_N(p);
          b["f_lower"] = f_lower_bound(p);
          b["g_upper"] = g_upper_bound(p);
          b["g_below_f"] = b["g_upper"].get<double>() < b["f_lower"].get<double>();
          rep["bounds"] = b;
          if (s.curvature == Curvature::Euclidean && !(b["g_below_f"].get<bool>())) {
            code = p.n >= threshold_N(p) ? kExitViolation : kExitInconclusive;
          }
        } catch (const InputError& e) {
          rep["bounds"] = {{"error", e.what()}};
          if (s.curvature == Curvature::Euclidean) code = kExitInconclusive;
        }
      }
      rep["exit_code"] = code;
      emit(vp, rep, elapsed(), out);
      return code;
    }

    if (cmd_render->parsed()) {
      if (rd.out.empty()) throw InputError("render needs --out");
      const RngSpec rng{rd.seed, 0};
      std::string svg_text;
      if (rd_kind == "kp") {
        const KPParams p = KPParams::make(space_of(rd), rd_n, rd_lambda, rd_delta, rd_k);
        const auto pts_p = gen_separated(p, rng.child(10));
        const auto pts_q = gen_contracted(p, rng.child(11));
        svg_text = svg::render_kp(p, pts_p, pts_q, rng.child(12));
      } else {
        if (rd_points.empty()) throw InputError("render --kind " + rd_kind + " needs --points");
        const PointSetFile f = load_point_set(rd_points);
        if (rd_kind == "dual") {
          svg_text = svg::render_dual(f.space, f.points, rd_r, rng);
        } else {
          Vec n = Vec::Zero(f.space.ambient_dim());
          if (rd_normal.empty()) {
            n[0] = 1.0;
          } else {
            if (static_cast<int>(rd_normal.size()) != f.space.ambient_dim()) {
              throw InputError("--normal needs " + std::to_string(f.space.ambient_dim()) +
                               " components");
            }
            for (std::size_t i = 0; i < rd_normal.size(); ++i) n[static_cast<Eigen::Index>(i)] = rd_normal[i];
          }
          const OrientedHyperplane h = make_hyperplane(f.space, n, rd_offset);
          svg_text = svg::render_symmetrization(f.space, f.points, rd_ball, h, rng);
        }
      }
      std::ofstream f(rd.out);
      if (!f) throw InputError("cannot write " + rd.out);
      f << svg_text;
      out << "wrote " << rd.out << "\n";
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace curvball
