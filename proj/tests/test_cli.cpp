#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fixtures.hpp"
#include "wildfire/envdata.hpp"
#include "wildfire/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using doctest::Approx;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = std::string("\"") + WILDFIRE_CLI + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                          err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = wildfire::io::read_file(out);
  r.err = wildfire::io::read_file(err);
  return r;
}

const fs::path data_dir{WILDFIRE_DATA_DIR};

// A small scenario: 30x30 cells of 10 km, a few incidents, 1 km biomass.
fs::path small_scenario(const fs::path& dir) {
  json spec{{"env",
             {{"kind", "random"},
              {"nx", 30},
              {"ny", 30},
              {"nt", 120},
              {"spacing_km", 10},
              {"u10_range", {-10, 10}},
              {"v10_range", {-10, 10}},
              {"swvl1_range", {0.02, 0.25}}}},
            {"biomass", {{"nx", 300}, {"ny", 300}, {"spacing_km", 1}, {"range", {20, 120}}}},
            {"incidents", {{"count", 6}, {"start_hour_max", 60}, {"burn_hours", {6, 30}}}},
            {"geo", {{"width_km", 300}, {"height_km", 300}}}};
  std::ofstream(dir / "spec.json") << spec.dump();
  return dir / "spec.json";
}

}  // namespace

TEST_CASE("cli linkbudget") {
  auto dir = fixtures::scratch_dir("cli_link");
  auto r = run_cli("linkbudget --params \"" + (data_dir / "table1-10deg.json").string() + "\"", dir);
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(std::abs(j["cnr_db"].get<double>() - 8.3714) <= 0.02);
  CHECK(j["bits_per_ru"] == 144);
  CHECK(j["supportable_sensors"] == 23328000);

  r = run_cli("linkbudget --params \"" + (data_dir / "table1-90deg.json").string() + "\"", dir);
  REQUIRE(r.code == 0);
  CHECK(std::abs(json::parse(r.out)["cnr_db"].get<double>() - 9.4636) <= 0.02);

  r = run_cli("linkbudget --system-bw-hz 360000 --out-dir \"" + (dir / "o").string() + "\"", dir);
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["peak_rate_bps"].get<double>() == Approx(432000.0));
  CHECK(fs::exists(dir / "o" / "capacity.json"));

  r = run_cli("linkbudget --reports-per-day 1440 --tbs-map \"" + (data_dir / "tbs_default.csv").string() + "\"", dir);
  REQUIRE(r.code == 0);
  CHECK(std::abs(json::parse(r.out)["supportable_sensors"].get<double>() - 32400) <= 1);

  r = run_cli("linkbudget --distance-km 400000", dir);
  CHECK(r.code == 2);
  CHECK(r.err.find("error") != std::string::npos);
  r = run_cli("linkbudget --pl-polar-db -3", dir);
  CHECK(r.code == 1);
  CHECK(r.err.find("pl_polar_db") != std::string::npos);
}

TEST_CASE("cli synth-env") {
  auto dir = fixtures::scratch_dir("cli_synth");
  json constant{{"nx", 5}, {"ny", 4}, {"nt", 3}, {"spacing_km", 10}, {"u10", 2.5}, {"v10", -1}, {"swvl1", 0.2}};
  std::ofstream(dir / "const.json") << constant.dump();
  auto r = run_cli("synth-env --spec \"" + (dir / "const.json").string() + "\" --out-dir \"" + (dir / "c").string() +
                       "\"",
                   dir);
  REQUIRE(r.code == 0);
  auto g = wildfire::load_env_grid(dir / "c" / "env.json");
  CHECK(g.nx() == 5);
  CHECK(wildfire::sample_env(g, {12, 12}, 2).u10 == 2.5);

  json random{{"kind", "random"},   {"nx", 8}, {"ny", 8}, {"nt", 5}, {"spacing_km", 10}, {"u10_range", {-5, 5}},
              {"v10_range", {-5, 5}}, {"swvl1_range", {0.0, 0.3}}};
  std::ofstream(dir / "rand.json") << random.dump();
  auto gen = [&](const std::string& sub, int seed) {
    return run_cli("synth-env --spec \"" + (dir / "rand.json").string() + "\" --seed " + std::to_string(seed) +
                       " --out-dir \"" + (dir / sub).string() + "\"",
                   dir)
        .code;
  };
  REQUIRE(gen("a", 3) == 0);
  REQUIRE(gen("b", 3) == 0);
  REQUIRE(gen("c2", 4) == 0);
  for (const char* f : {"env.json", "env_u10.f32", "env_v10.f32", "env_swvl1.f32"}) {
    CHECK(wildfire::io::read_file(dir / "a" / f) == wildfire::io::read_file(dir / "b" / f));
  }
  CHECK(wildfire::io::read_file(dir / "a" / "env_u10.f32") != wildfire::io::read_file(dir / "c2" / "env_u10.f32"));

  CHECK(run_cli("synth-env --spec \"" + (dir / "missing.json").string() + "\"", dir).code == 1);
  json bad = random;
  bad["swvl1_range"] = {0.1, 1.5};
  std::ofstream(dir / "bad.json") << bad.dump();
  r = run_cli("synth-env --spec \"" + (dir / "bad.json").string() + "\" --out-dir \"" + (dir / "x").string() + "\"",
              dir);
  CHECK(r.code == 1);
  CHECK(r.err.find("swvl1") != std::string::npos);
}

TEST_CASE("cli simulate and sweep") {
  auto dir = fixtures::scratch_dir("cli_run");
  const fs::path scen = dir / "scen";
  REQUIRE(run_cli("synth-env --spec \"" + small_scenario(dir).string() + "\" --seed 5 --out-dir \"" + scen.string() +
                      "\"",
                  dir)
              .code == 0);
  const std::string config = "--config \"" + (scen / "config.json").string() + "\"";

  auto r = run_cli(config + " simulate --incident SYN-002 --trace --out-dir \"" + (dir / "sim").string() + "\"", dir);
  REQUIRE(r.code == 0);
  auto result = json::parse(wildfire::io::read_file(dir / "sim" / "incident_SYN-002.json"));
  CHECK(result["incident_id"] == "SYN-002");
  CHECK(result["detected"] == false);
  CHECK(result.contains("carbon_tons"));
  const auto trace = wildfire::io::read_file(dir / "sim" / "trace_SYN-002.csv");
  CHECK(trace.rfind("t,center_x_km,center_y_km,radius_km,n_frontier\n", 0) == 0);
  CHECK(std::count(trace.begin(), trace.end(), '\n') == result["steps"].get<int>() + 1);

  r = run_cli(config + " --set deploy.count=2000 simulate --incident SYN-001 --out-dir \"" + (dir / "sim").string() +
                  "\"",
              dir);
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["n_sensors"] == 2000);

  r = run_cli(config + " simulate --incident NOPE", dir);
  CHECK(r.code == 1);
  CHECK(r.err.find("NOPE") != std::string::npos);

  json broken = json::parse(wildfire::io::read_file(scen / "config.json"));
  broken["env_manifest"] = "does_not_exist.json";
  std::ofstream(scen / "broken.json") << broken.dump();
  r = run_cli("--config \"" + (scen / "broken.json").string() + "\" simulate --incident SYN-001", dir);
  CHECK(r.code == 1);
  CHECK(r.err.find("does_not_exist.json") != std::string::npos);

  r = run_cli(config + " --set fire.u_max_ms=-1 simulate --incident SYN-001", dir);
  CHECK(r.code == 1);
  CHECK(r.err.find("u_max") != std::string::npos);
  CHECK(run_cli("simulate", dir).code == 1);
  CHECK(run_cli("frobnicate", dir).code == 1);

  const std::string sweep_args = config + " sweep --counts 100 1000 --trials 2 --seed 9";
  REQUIRE(run_cli(sweep_args + " --workers 1 --out-dir \"" + (dir / "s1").string() + "\"", dir).code == 0);
  REQUIRE(run_cli(sweep_args + " --workers 3 --out-dir \"" + (dir / "s3").string() + "\"", dir).code == 0);
  for (const char* f : {"sweep.csv", "summary.csv"}) {
    CHECK(wildfire::io::read_file(dir / "s1" / f) == wildfire::io::read_file(dir / "s3" / f));
  }
  auto manifest_without_out_dir = [&](const char* sub) {
    auto m = json::parse(wildfire::io::read_file(dir / sub / "manifest.json"));
    m["config"].erase("output_dir");
    return m;
  };
  CHECK(manifest_without_out_dir("s1") == manifest_without_out_dir("s3"));
  REQUIRE(run_cli(sweep_args + " --out-dir \"" + (dir / "s1").string() + "\"", dir).code == 0);
  CHECK(wildfire::io::read_file(dir / "s1" / "sweep.csv") == wildfire::io::read_file(dir / "s3" / "sweep.csv"));

  auto manifest = json::parse(wildfire::io::read_file(dir / "s1" / "manifest.json"));
  CHECK(manifest["config"]["fire"]["u_max_ms"] == 0.13);
  CHECK(manifest["config"]["sweep"]["seed"] == 9);
  CHECK(manifest["config"]["carbon"]["total_biomass_factor"] == 1.2);
  CHECK(manifest["trial_seeds"].size() == 4);
  CHECK(manifest.contains("averaging"));
  const auto csv = wildfire::io::read_file(dir / "s1" / "sweep.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  for (const auto& e : fs::directory_iterator(dir / "s1")) {
    CHECK(e.path().filename().string().find(".tmp") == std::string::npos);
  }
}
