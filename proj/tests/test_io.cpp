#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "curvball/errors.hpp"
#include "curvball/io.hpp"
#include "support.hpp"

using namespace curvball;
using namespace testing_support;

namespace {

std::filesystem::path data(const std::string& name) {
  return std::filesystem::path(CURVBALL_TEST_DATA) / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("load point sets") {
  const auto lens = load_point_set(data("lens_e2.json"));
  CHECK(lens.space == Space::euclidean(2));
  CHECK(lens.points.size() == 2);
  const auto tri = load_point_set(data("triangle_h2.json"));
  CHECK(tri.space.curvature == Curvature::Hyperbolic);
  CHECK(distance(tri.space, tri.points[0], tri.points[1]) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(load_point_set(data("bad_off_model.json")), InputError);
  CHECK_THROWS_AS(load_point_set(data("bad_intrinsic_curved.json")), InputError);
  CHECK_THROWS_AS(load_point_set(data("missing.json")), InputError);
}

TEST_CASE("parse rejects malformed documents") {
  CHECK_THROWS_AS(parse_point_set(Json::parse(R"({"dim": 2, "points": []})")), InputError);
  CHECK_THROWS_AS(parse_point_set(Json::parse(R"({"space": "euclidean", "dim": 2, "points": [[1, 2, 3]]})")),
                  InputError);
  CHECK_THROWS_AS(parse_point_set(Json::parse(R"({"space": "flat", "dim": 2, "points": [[1, 2]]})")),
                  InputError);
  CHECK_THROWS_AS(parse_point_set(Json::parse(R"({"space": "euclidean", "dim": 1, "points": [[1]]})")),
                  InputError);
}

TEST_CASE("near-model points are renormalized") {
  const auto f = parse_point_set(
      Json::parse(R"({"space": "spherical", "dim": 2, "points": [[0, 0, 1.0000001]]})"));
  CHECK(f.points[0].coords.norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("save then load is idempotent") {
  const auto tmp = std::filesystem::temp_directory_path() / "curvball_io_roundtrip";
  std::filesystem::create_directories(tmp);
  RandomStream rng(RngSpec{71, 0});
  for (const auto& s : {Space::euclidean(3), Space::spherical(2), Space::hyperbolic(4)}) {
    PointSetFile f{s, random_points(s, 7, 1.0, rng), "embedded"};
    save_point_set(tmp / "a.json", f);
    const auto g = load_point_set(tmp / "a.json");
    save_point_set(tmp / "b.json", g);
    CHECK(slurp(tmp / "a.json") == slurp(tmp / "b.json"));
    REQUIRE(g.points.size() == f.points.size());
    for (std::size_t i = 0; i < f.points.size(); ++i) CHECK(g.points[i].coords == f.points[i].coords);
  }
  std::filesystem::remove_all(tmp);
}

TEST_CASE("report serialisation carries provenance") {
  const auto j = to_json(RngSpec{5, 9});
  CHECK(j["seed"] == 5);
  CHECK(j["stream_id"] == 9);
  const auto s = to_json(Space::hyperbolic(2, 1.5));
  CHECK(s["space"] == "hyperbolic");
  CHECK(s["k"] == 1.5);
  CHECK(dump(Json{{"a", 1}}).back() == '\n');
}
