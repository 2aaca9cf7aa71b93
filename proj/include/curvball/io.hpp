#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "curvball/geom_core.hpp"
#include "curvball/kp.hpp"
#include "curvball/measure.hpp"
#include "curvball/rng.hpp"

namespace curvball {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";
// Points within this distance of the model are renormalized on load.
inline constexpr double kLoadTol = 1e-6;

struct PointSetFile {
  Space space;
  std::vector<Point> points;
  std::string coordinates = "embedded";  // or "intrinsic" (flat space only)
};

PointSetFile parse_point_set(const Json& j);
PointSetFile load_point_set(const std::filesystem::path& path);
Json to_json(const PointSetFile& f);
void save_point_set(const std::filesystem::path& path, const PointSetFile& f);

Json to_json(const Space& s);
Json to_json(const Point& p);
Json to_json(const RngSpec& r);
Json to_json(const VolumeEstimate& e);
Json to_json(const KPParams& p);
Json to_json(const KPReport& r);
Json to_json(const MainReport& r, bool with_details = false);
Json to_json(const CoreLemmaReport& r);
Json to_json(const PropCheck& c);

// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace curvball
