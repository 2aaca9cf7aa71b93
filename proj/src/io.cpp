#include "curvball/io.hpp"

#include <fstream>
#include <sstream>

#include "curvball/errors.hpp"

namespace curvball {

PointSetFile parse_point_set(const Json& j) {
  if (!j.is_object() || !j.contains("space") || !j.contains("dim") || !j.contains("points")) {
    throw InputError("point set file needs \"space\", \"dim\" and \"points\"");
  }
  PointSetFile f;
  const Curvature c = curvature_from_string(j.at("space").get<std::string>());
  f.space = Space::from_kappa(static_cast<int>(c), j.at("dim").get<int>());
  f.coordinates = j.value("coordinates", std::string("embedded"));
  if (f.coordinates != "embedded" && f.coordinates != "intrinsic") {
    throw InputError("coordinates must be \"embedded\" or \"intrinsic\"");
  }
  if (f.coordinates == "intrinsic" && f.space.curved()) {
    throw InputError("intrinsic coordinates are only defined for euclidean point sets");
  }
  const auto& pts = j.at("points");
  if (!pts.is_array()) throw InputError("\"points\" must be an array");
  for (const auto& row : pts) {
    if (!row.is_array()) throw InputError("each point must be an array of numbers");
    Vec v(static_cast<Eigen::Index>(row.size()));
    if (row.size() != static_cast<std::size_t>(f.space.ambient_dim())) {
      throw InputError("point has " + std::to_string(row.size()) + " coordinates, expected " +
                       std::to_string(f.space.ambient_dim()));
    }
    for (std::size_t i = 0; i < row.size(); ++i) v[static_cast<Eigen::Index>(i)] = row[i].get<double>();
    // Points already on the model are kept bit-for-bit so load/save round-trips.
    f.points.push_back(on_model(f.space, v) ? Point{v} : make_point(f.space, v, kLoadTol));
  }
  return f;
}

PointSetFile load_point_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_point_set(j);
}

Json to_json(const Point& p) {
  Json row = Json::array();
  for (Eigen::Index i = 0; i < p.coords.size(); ++i) row.push_back(p.coords[i]);
  return row;
}

Json to_json(const PointSetFile& f) {
  Json j;
  j["space"] = to_string(f.space.curvature);
  j["dim"] = f.space.dim;
  j["coordinates"] = f.coordinates;
  j["points"] = Json::array();
  for (const auto& p : f.points) j["points"].push_back(to_json(p));
  return j;
}

void save_point_set(const std::filesystem::path& path, const PointSetFile& f) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << dump(to_json(f));
}

Json to_json(const Space& s) {
  Json j;
  j["space"] = to_string(s.curvature);
  j["dim"] = s.dim;
  if (s.k_cap) j["k"] = *s.k_cap;
  return j;
}

Json to_json(const RngSpec& r) {
  Json j;
  j["seed"] = r.seed;
  j["stream_id"] = r.stream_id;
  return j;
}

Json to_json(const VolumeEstimate& e) {
  Json j;
  j["value"] = e.value;
  j["std_err"] = e.std_err;
  j["ci95"] = Json::array({e.ci_lo, e.ci_hi});
  j["hits"] = e.hits;
  j["n_samples"] = e.n_samples;
  j["sampling_ball_volume"] = e.sampling_ball_volume;
  return j;
}

Json to_json(const KPParams& p) {
  Json j = to_json(p.space);
  j["N"] = p.n;
  j["lambda"] = p.lambda;
  j["delta"] = p.delta;
  if (p.k) j["k"] = *p.k;
  return j;
}

Json to_json(const KPReport& r) {
  Json j;
  j["params"] = to_json(r.params);
  j["rng"] = to_json(r.rng);
  j["n_mc"] = r.n_mc;
  j["threshold_N"] = r.threshold;
  j["below_threshold"] = r.below_threshold;
  j["vol_P_dual"] = to_json(r.vol_p_dual);
  j["vol_Q_dual"] = to_json(r.vol_q_dual);
  j["f_lower"] = r.f_lower;
  j["g_upper"] = r.g_upper;
  j["sandwich_ok"] = r.sandwich_ok;
  j["union_identity"] = {{"probes", r.union_identity_probes},
                         {"mismatches", r.union_identity_mismatches}};
  j["verdict"] = to_string(r.verdict);
  return j;
}

Json to_json(const MainReport& r, bool with_details) {
  Json j;
  j["params"] = to_json(r.space);
  j["params"]["r"] = r.r;
  j["trials"] = r.trials;
  j["n_mc"] = r.n_mc;
  j["rng"] = to_json(r.rng);
  j["violations"] = r.violations;
  j["max_z"] = r.max_z;
  if (with_details) {
    j["details"] = Json::array();
    for (const auto& t : r.details) {
      Json d;
      d["n_balls"] = t.n_balls;
      d["vol_A"] = to_json(t.vol_a);
      d["ball_radius"] = t.ball_radius;
      d["vol_A_dual"] = to_json(t.vol_a_dual);
      d["vol_B_dual"] = t.vol_b_dual;
      d["sigma"] = t.sigma;
      d["excess"] = t.excess;
      d["violation"] = t.violation;
      j["details"].push_back(d);
    }
  }
  return j;
}

Json to_json(const CoreLemmaReport& r) {
  Json j;
  j["params"] = to_json(r.space);
  j["params"]["r"] = r.r;
  j["trials"] = r.trials;
  j["samples_per_trial"] = r.samples_per_trial;
  j["inner_samples"] = r.inner_samples;
  j["rng"] = to_json(r.rng);
  j["checks"] = r.checks;
  j["refutations"] = r.refutations;
  j["skipped_trials"] = r.skipped_trials;
  return j;
}

Json to_json(const PropCheck& c) {
  Json j;
  j["status"] = to_string(c.status);
  j["lhs"] = c.lhs;
  j["mu"] = c.mu;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace curvball
