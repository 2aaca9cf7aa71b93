#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "curvball/cli.hpp"
#include "curvball/io.hpp"

using namespace curvball;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data_dir() { return CURVBALL_TEST_DATA; }

std::vector<std::string> expand(const Json& args) {
  std::vector<std::string> v;
  for (const auto& a : args) {
    std::string s = a.get<std::string>();
    const auto pos = s.find("@DATA@");
    if (pos != std::string::npos) s.replace(pos, 6, data_dir());
    v.push_back(s);
  }
  return v;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("golden corpus: exit codes and key values") {
  const Json cases = Json::parse(slurp(data_dir() + "/golden/cases.json"));
  for (const auto& c : cases) {
    const std::string name = c["name"];
    CAPTURE(name);
    const Run r = run(expand(c["args"]));
    CHECK(r.code == c["exit_code"].get<int>());
    if (r.code != 1) {
      const Json rep = Json::parse(r.out);
      CHECK(rep["exit_code"] == r.code);
      CHECK(rep["version"] == kVersion);
      if (c.contains("expect")) {
        for (auto it = c["expect"].begin(); it != c["expect"].end(); ++it) {
          CAPTURE(it.key());
          REQUIRE(rep.contains(it.key()));
          if (it.value().is_number()) {
            CHECK(rep[it.key()].get<double>() == doctest::Approx(it.value().get<double>()).epsilon(1e-5));
          } else {
            CHECK(rep[it.key()] == it.value());
          }
        }
      }
    } else {
      CHECK_FALSE(r.err.empty());
    }
  }
}

TEST_CASE("verdict and exit code agree") {
  const Run r = run({"verify", "kp", "--space", "spherical", "-d", "2", "-N", "89", "--lambda", "0.1",
                     "--delta", "0.5", "--n-mc", "100000", "--seed", "3"});
  const Json rep = Json::parse(r.out);
  const std::string v = rep["verdict"];
  CHECK(r.code == (v == "verified" ? 0 : v == "inconclusive" ? 2 : 3));
}

TEST_CASE("reports reproduce themselves from the embedded command") {
  const std::vector<std::vector<std::string>> cmds{
      {"dual-volume", "--points", data_dir() + "/lens_e2.json", "-r", "1", "--n-mc", "300000", "--seed", "11"},
      {"verify", "kp", "--space", "hyperbolic", "-d", "2", "-N", "13", "--lambda", "0.3", "--delta", "0.6",
       "-k", "1", "--n-mc", "100000", "--seed", "5"},
      {"verify", "main", "--space", "euclidean", "-d", "2", "-r", "1", "--trials", "4", "--n-mc", "20000"},
  };
  for (const auto& cmd : cmds) {
    setenv("CURVBALL_THREADS", "1", 1);
    const Run a = run(cmd);
    const Json rep = Json::parse(a.out);
    std::vector<std::string> again;
    for (const auto& s : rep["command"]) again.push_back(s.get<std::string>());
    setenv("CURVBALL_THREADS", "4", 1);
    const Run b = run(again);
    setenv("CURVBALL_THREADS", "3", 1);
    const Run c = run(again);
    unsetenv("CURVBALL_THREADS");
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
  }
}

TEST_CASE("text format and output file") {
  const auto tmp = std::filesystem::temp_directory_path() / "curvball_cli_out.txt";
  const Run r = run({"ball-volume", "--space", "euclidean", "-d", "2", "-r", "1", "--format", "text",
                     "--out", tmp.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const std::string text = slurp(tmp);
  CHECK(text.find("volume: 3.14159") != std::string::npos);
  std::filesystem::remove(tmp);
}

TEST_CASE("timing is opt-in") {
  const Run a = run({"ball-volume", "-r", "1"});
  CHECK(a.out.find("wall_clock") == std::string::npos);
  const Run b = run({"ball-volume", "-r", "1", "--timing"});
  CHECK(b.out.find("wall_clock") != std::string::npos);
}

TEST_CASE("render produces structured SVG") {
  const auto dir = std::filesystem::temp_directory_path() / "curvball_render";
  std::filesystem::create_directories(dir);
  const std::string lens = (dir / "lens.svg").string();
  CHECK(run({"render", "--kind", "dual", "--points", data_dir() + "/lens_e2.json", "-r", "1", "--out", lens}).code == 0);
  const std::string l = slurp(lens);
  CHECK(l.rfind("<svg", 0) == 0);
  CHECK(l.find("</svg>") != std::string::npos);
  std::size_t circles = 0;
  for (auto p = l.find("<circle"); p != std::string::npos; p = l.find("<circle", p + 1)) ++circles;
  CHECK(circles >= 2);
  CHECK(l.find("<path") != std::string::npos);

  const std::string sym = (dir / "sym.svg").string();
  CHECK(run({"render", "--kind", "symmetrize", "--points", data_dir() + "/lens_e2.json", "--ball-radius", "0.4",
             "--normal", "1,0.3", "--offset", "0.2", "--out", sym}).code == 0);
  const std::string s = slurp(sym);
  CHECK(s.find("id=\"before\"") != std::string::npos);
  CHECK(s.find("id=\"after\"") != std::string::npos);

  const std::string kp = (dir / "kp.svg").string();
  CHECK(run({"render", "--kind", "kp", "--space", "euclidean", "-N", "6", "--lambda", "1", "--delta", "1",
             "--out", kp}).code == 0);
  const std::string k = slurp(kp);
  CHECK(k.find("id=\"P-dual\"") != std::string::npos);
  CHECK(k.find("id=\"Q-dual\"") != std::string::npos);

  const std::string hk = (dir / "hkp.svg").string();
  CHECK(run({"render", "--kind", "kp", "--space", "hyperbolic", "-N", "13", "--lambda", "0.3", "--delta", "0.6",
             "-k", "1", "--out", hk}).code == 0);
  CHECK(slurp(hk).find("</svg>") != std::string::npos);

  CHECK(run({"render", "--kind", "dual", "-r", "1", "--out", lens}).code == 1);
  std::filesystem::remove_all(dir);
}
