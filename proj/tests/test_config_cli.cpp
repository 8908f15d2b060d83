#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "uas/cli.hpp"
#include "uas/config.hpp"

using namespace uas;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("uas_cli_test_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

json reference_doc() {
  return json::parse(R"({
    "radio": {"g0": 1.42e-4, "p_downlink_w": 0.001, "p_max_gn_w": 1.0,
              "noise_power_w": 1.25e-14, "gamma_dl": 100, "gamma_ul": 100},
    "region": {"radius_m": 600, "n_gns": 15},
    "environment": "urban"
  })");
}

}  // namespace

TEST_CASE("config parsing") {
  auto cfg = parse_run_config(reference_doc());
  CHECK(cfg.scenario.region_radius == 600.0);
  CHECK(cfg.scenario.environment_name == "urban");

  SUBCASE("missing radio field is named") {
    json doc = reference_doc();
    doc["radio"].erase("gamma_dl");
    try {
      parse_run_config(doc);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "radio.gamma_dl");
    }
  }
  SUBCASE("missing radio section") {
    json doc = reference_doc();
    doc.erase("radio");
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);
  }
  SUBCASE("unknown section and environment") {
    json doc = reference_doc();
    doc["weather"] = json::object();
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);
    doc = reference_doc();
    doc["environment"] = "rural";
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);
  }
  SUBCASE("custom environment object") {
    json doc = reference_doc();
    doc["environment"] = {{"name", "dense"}, {"a", 12.0}, {"b", 0.11},
                          {"eta_los", 1.6}, {"eta_nlos", 23.0}, {"half_beamwidth_deg", 45.0}};
    auto c = parse_run_config(doc);
    CHECK(c.scenario.environment.a == 12.0);
    CHECK(c.scenario.environment.half_beamwidth.deg() == doctest::Approx(45.0));
  }
}

TEST_CASE("config hash tracks values only") {
  auto a = parse_run_config(reference_doc());
  json reordered = json::parse(R"({
    "environment": "urban",
    "region": {"n_gns": 15, "radius_m": 600.0},
    "radio": {"gamma_ul": 100.0, "gamma_dl": 1e2, "noise_power_w": 12.5e-15,
              "p_max_gn_w": 1, "p_downlink_w": 1e-3, "g0": 0.000142}
  })");
  auto b = parse_run_config(reordered);
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);

  json changed = reference_doc();
  changed["region"]["radius_m"] = 601;
  CHECK(config_hash(parse_run_config(changed)) != config_hash(a));
  auto seeded = a;
  seeded.scenario.seed = 2;
  CHECK(config_hash(seeded) != config_hash(a));
}

TEST_CASE("cli availability") {
  auto r = run({"availability", "--n", "10", "--lambda", "0.1", "--rho", "0.999"});
  CHECK(r.code == 0);
  CHECK(r.out.find("u_opt = 5\n") != std::string::npos);
  CHECK(r.out.find("u,u_over_n,A,eta\n") != std::string::npos);

  CHECK(run({"availability", "--n", "10", "--lambda", "2", "--rho", "0.99"}).out.find("u_opt = 10\n") !=
        std::string::npos);
  CHECK(run({"availability", "--n", "10", "--lambda", "0", "--rho", "0.999"}).out.find("u_opt = 1\n") !=
        std::string::npos);

  CHECK(run({"availability", "--n", "10", "--lambda", "0.1", "--kappa", "0"}).code == 2);
  CHECK(run({"availability", "--n", "10", "--lambda", "0.1", "--kappa", "-1"}).code == 2);
  CHECK(run({"availability", "--n", "10", "--lambda", "0.1", "--rho", "1.5"}).code == 2);
  CHECK(run({"availability", "--n", "10", "--lambda", "0.1", "--rho", "0"}).code == 2);
  CHECK(run({"availability", "--lambda", "0.1"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli config errors map to exit codes") {
  TempDir dir;
  json doc = reference_doc();
  doc["radio"].erase("gamma_dl");
  write(dir.path() / "bad.json", doc.dump());
  auto r = run({"--config", (dir.path() / "bad.json").string(), "--out", dir.str(), "coverage"});
  CHECK(r.code == 2);
  CHECK(r.err.find("radio.gamma_dl") != std::string::npos);

  write(dir.path() / "broken.json", "{ not json");
  CHECK(run({"--config", (dir.path() / "broken.json").string(), "coverage"}).code == 2);
  CHECK(run({"--config", (dir.path() / "absent.json").string(), "coverage"}).code == 3);
}

TEST_CASE("cli coverage and pack") {
  TempDir dir;
  auto cov = run({"--out", dir.str(), "coverage"});
  REQUIRE(cov.code == 0);
  auto cj = json::parse(slurp(dir.path() / "coverage.json"));
  CHECK(cj["radius_m"].get<double>() == doctest::Approx(290.672277763114).epsilon(1e-11));

  auto packed = run({"--out", dir.str(), "--seed", "3", "pack"});
  REQUIRE(packed.code == 0);
  std::string layout = slurp(dir.path() / "layout.csv");
  CHECK(layout.rfind("x,y,R_p,h_p\n", 0) == 0);

  SUBCASE("GN outside the region") {
    write(dir.path() / "gns.csv", "x,y\n1200,0\n");
    auto r = run({"--out", dir.str(), "pack", "--gn-file", (dir.path() / "gns.csv").string()});
    CHECK(r.code == 2);
  }
  SUBCASE("unreadable GN file") {
    auto r = run({"--out", dir.str(), "pack", "--gn-file", (dir.path() / "nope.csv").string()});
    CHECK(r.code == 3);
  }
  SUBCASE("region smaller than one cell") {
    json small = reference_doc();
    small["region"]["radius_m"] = 200;
    write(dir.path() / "small.json", small.dump());
    write(dir.path() / "gns.csv", "x,y\n150,0\n-10,20\n0,-199\n");
    auto r = run({"--config", (dir.path() / "small.json").string(), "--out", dir.str(), "pack",
                  "--gn-file", (dir.path() / "gns.csv").string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("cells n                1\n") != std::string::npos);
    CHECK(slurp(dir.path() / "layout.csv").find("\n0,0,") != std::string::npos);
  }
}

TEST_CASE("cli figure") {
  TempDir dir;
  CHECK(run({"--out", dir.str(), "figure", "fig7"}).code == 2);

  auto a = run({"--out", dir.str(), "--trials", "20", "figure", "fig6"});
  REQUIRE(a.code == 0);
  std::string first = slurp(dir.path() / "fig6.csv");
  auto b = run({"--out", dir.str(), "--trials", "20", "figure", "fig6"});
  REQUIRE(b.code == 0);
  CHECK(slurp(dir.path() / "fig6.csv") == first);

  auto manifest = json::parse(slurp(dir.path() / "fig6.manifest.json"));
  CHECK(manifest["figure"] == "fig6");
  CHECK(manifest["tool_version"] == kToolVersion);
  CHECK(manifest["config_hash"].get<std::string>().size() == 16);
  CHECK(manifest.contains("wall_time"));

  REQUIRE(run({"--out", dir.str(), "figure", "fig5"}).code == 0);
  std::string fig5 = slurp(dir.path() / "fig5.csv");
  CHECK(std::count(fig5.begin(), fig5.end(), '\n') == 41);
}

TEST_CASE("UAS_PLANNER_OUT overrides --out") {
  TempDir env_dir;
  TempDir flag_dir;
  ::setenv("UAS_PLANNER_OUT", env_dir.str().c_str(), 1);
  auto r = run({"--out", flag_dir.str(), "figure", "fig5"});
  ::unsetenv("UAS_PLANNER_OUT");
  REQUIRE(r.code == 0);
  CHECK(fs::exists(env_dir.path() / "fig5.csv"));
  CHECK_FALSE(fs::exists(flag_dir.path() / "fig5.csv"));
}
