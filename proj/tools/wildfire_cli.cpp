// wildfire: command-line front end for the simulation, sweep, link budget and
// scenario generator.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "wildfire/carbon.hpp"
#include "wildfire/config.hpp"
#include "wildfire/envdata.hpp"
#include "wildfire/error.hpp"
#include "wildfire/evolution.hpp"
#include "wildfire/harness.hpp"
#include "wildfire/io.hpp"
#include "wildfire/linkbudget.hpp"
#include "wildfire/rng.hpp"
#include "wildfire/scenario.hpp"
#include "wildfire/sensors.hpp"
#include "wildfire/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wildfire;

namespace {

struct GlobalOptions {
  std::string config;
  std::string out_dir;
  int workers = 0;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

// "section.field=value"; the value is parsed as JSON when it can be, else kept as a string.
void apply_override(json& j, const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ValidationError("--set expects KEY=VALUE, got '" + text + "'");
  const std::string key = text.substr(0, eq);
  const std::string raw = text.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  json* node = &j;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ValidationError("--set: bad key '" + key + "'");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      break;
    }
    if (!node->contains(part)) (*node)[part] = json::object();
    node = &(*node)[part];
    if (!node->is_object()) throw ValidationError("--set: '" + part + "' is not a section");
    start = dot + 1;
  }
}

RunConfig load_config(const GlobalOptions& g) {
  json j = json::object();
  fs::path base = fs::current_path();
  if (!g.config.empty()) {
    const fs::path path(g.config);
    try {
      j = json::parse(io::read_file(path));
    } catch (const json::exception& e) {
      throw ValidationError(path.string() + ": " + e.what());
    }
    base = path.parent_path().empty() ? fs::current_path() : path.parent_path();
  }
  for (const auto& o : g.overrides) apply_override(j, o);
  RunConfig cfg = RunConfig::from_json(j, base);
  if (!g.out_dir.empty()) cfg.output_dir = g.out_dir;
  return cfg;
}

int worker_count(const GlobalOptions& g) {
  if (g.workers > 0) return g.workers;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void require_path(const fs::path& p, const char* field) {
  if (p.empty()) throw ValidationError(std::string("config field '") + field + "' is not set");
}

EnvGrid load_env(const RunConfig& cfg) {
  require_path(cfg.env_manifest, "env_manifest");
  return load_env_grid(cfg.env_manifest);
}

std::string safe_name(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')) c = '_';
  }
  return out;
}

json circle_json(const BurnCircle& c) {
  return {{"center_x_km", c.center.x}, {"center_y_km", c.center.y}, {"radius_km", c.radius_km},
          {"area_km2", c.area_km2()}};
}

int cmd_simulate(const GlobalOptions& g, const std::string& incident_id, bool trace) {
  RunConfig cfg = load_config(g);
  const EnvGrid env = load_env(cfg);
  require_path(cfg.incidents, "incidents");
  const auto incidents = load_incidents(cfg.incidents, cfg.geo, env);
  const auto it = std::find_if(incidents.begin(), incidents.end(),
                               [&](const Incident& i) { return i.id == incident_id; });
  if (it == incidents.end()) {
    throw ValidationError("incident '" + incident_id + "' not found in " + cfg.incidents.string());
  }

  SensorField field;
  if (!cfg.sensors.empty()) {
    field = load_sensors(cfg.sensors);
  } else {
    field = deploy_uniform(cfg.deploy_count, cfg.geo.rect(), g.seed.value_or(cfg.deploy_seed));
  }
  const SensorIndex index(field);

  EvolutionConfig evo = cfg.evolution;
  evo.keep_trace = trace;
  const IncidentResult r = simulate_incident(*it, env, index, evo);

  json out{{"incident_id", r.incident_id},
           {"detected", r.detected},
           {"detecting_sensor", r.detecting_sensor ? json(*r.detecting_sensor) : json(nullptr)},
           {"stop_reason", to_string(r.stop)},
           {"steps", r.steps},
           {"burned_hours", r.burned_hours},
           {"burned_area_km2", r.burned_area_km2},
           {"final_circle", circle_json(r.final_circle)},
           {"ignition", {{"x_km", it->ignition.x}, {"y_km", it->ignition.y}}},
           {"start_hour", it->start_hour},
           {"n_sensors", field.size()},
           {"sensor_seed", field.seed}};
  if (!cfg.biomass_manifest.empty()) {
    const BiomassGrid bio = load_biomass_grid(cfg.biomass_manifest);
    const double b = average_biomass(r.final_circle, bio);
    const EmissionReport e = emission_report(r.burned_area_km2, b, cfg.carbon);
    out["b_avg_mg_ha"] = e.b_avg_mg_ha;
    out["carbon_tons"] = e.carbon_tons;
    out["carbon_price_usd"] = e.price_usd;
  }

  fs::create_directories(cfg.output_dir);
  const std::string stem = safe_name(r.incident_id);
  io::write_file_atomic(cfg.output_dir / ("incident_" + stem + ".json"), out.dump(2) + "\n");
  if (trace) io::write_file_atomic(cfg.output_dir / ("trace_" + stem + ".csv"), trace_csv(r));
  std::cout << out.dump(2) << "\n";
  return 0;
}

struct SweepOverrides {
  std::vector<std::uint64_t> counts;
  int trials = 0;
  std::string baseline;
};

int cmd_sweep(const GlobalOptions& g, const SweepOverrides& o) {
  RunConfig cfg = load_config(g);
  if (!o.counts.empty()) cfg.sweep.sensor_counts = o.counts;
  if (o.trials > 0) cfg.sweep.trials = o.trials;
  if (!o.baseline.empty()) cfg.sweep.baseline = baseline_from_string(o.baseline);
  if (g.seed) cfg.sweep.seed = *g.seed;
  cfg.validate();

  const EnvGrid env = load_env(cfg);
  require_path(cfg.biomass_manifest, "biomass_manifest");
  const BiomassGrid bio = load_biomass_grid(cfg.biomass_manifest);
  check_coverage(bio, env);
  require_path(cfg.incidents, "incidents");
  const auto incidents = load_incidents(cfg.incidents, cfg.geo, env);

  const SweepResult r =
      sweep(incidents, env, bio, cfg.geo.rect(), cfg.sweep, cfg.evolution, cfg.carbon, worker_count(g));

  json seeds = json::array();
  for (const auto& t : r.trials) seeds.push_back({{"n_sensors", t.n_sensors}, {"trial", t.trial}, {"seed", t.seed}});
  json manifest{
      {"generator", std::string("wildfire ") + kVersion},
      {"rng", CounterRng::kName},
      {"averaging",
       "summary rows average burned hours, burned area and carbon over " + std::to_string(cfg.sweep.trials) +
           " independent deployments per sensor count; trial i deploys with seed + i"},
      {"baseline_mode", to_string(cfg.sweep.baseline)},
      {"baseline",
       {{"burned_hours", r.baseline.burned_hours},
        {"burned_area_km2", r.baseline.burned_area_km2},
        {"carbon_tons", r.baseline.carbon_tons},
        {"carbon_price_usd", r.baseline.carbon_price_usd}}},
      {"n_incidents", incidents.size()},
      {"deployment_region_km", {cfg.geo.rect().x0, cfg.geo.rect().y0, cfg.geo.width_km, cfg.geo.height_km}},
      {"trial_seeds", seeds},
      {"config", cfg.to_json()},
      {"outputs", {"sweep.csv", "summary.csv"}}};

  fs::create_directories(cfg.output_dir);
  io::write_file_atomic(cfg.output_dir / "sweep.csv", sweep_csv(r, cfg.sweep));
  io::write_file_atomic(cfg.output_dir / "summary.csv", summary_csv(r, cfg.sweep));
  io::write_file_atomic(cfg.output_dir / "manifest.json", manifest.dump(2) + "\n");
  std::cout << summary_csv(r, cfg.sweep);
  return 0;
}

struct LinkFlags {
  std::string params;
  std::string tbs_map;
  std::optional<double> eirp_dbm, g_over_t_db_k, bandwidth_hz, freq_mhz, distance_km, pl_atmos_db, pl_shadow_db,
      pl_scint_db, pl_polar_db, elevation_deg;
  std::optional<double> system_bw_hz, subcarrier_hz, ru_duration_s;
  std::optional<double> reports_per_day, payload_bytes;
};

int cmd_linkbudget(const GlobalOptions& g, const LinkFlags& f) {
  RunConfig cfg = load_config(g);
  LinkParams p = cfg.link;
  if (!f.params.empty()) {
    try {
      p = LinkParams::from_json(json::parse(io::read_file(f.params)));
    } catch (const json::exception& e) {
      throw ValidationError(f.params + ": " + e.what());
    }
  }
  auto set = [](const std::optional<double>& v, double& out) {
    if (v) out = *v;
  };
  set(f.eirp_dbm, p.eirp_dbm);
  set(f.g_over_t_db_k, p.g_over_t_db_k);
  set(f.bandwidth_hz, p.bandwidth_hz);
  set(f.freq_mhz, p.freq_mhz);
  set(f.distance_km, p.distance_km);
  set(f.pl_atmos_db, p.pl_atmos_db);
  set(f.pl_shadow_db, p.pl_shadow_db);
  set(f.pl_scint_db, p.pl_scint_db);
  set(f.pl_polar_db, p.pl_polar_db);
  set(f.elevation_deg, p.elevation_deg);
  CarrierConfig carrier = cfg.carrier;
  set(f.system_bw_hz, carrier.system_bw_hz);
  set(f.subcarrier_hz, carrier.subcarrier_hz);
  set(f.ru_duration_s, carrier.ru_duration_s);
  TrafficModel traffic = cfg.traffic;
  set(f.reports_per_day, traffic.reports_per_day);
  set(f.payload_bytes, traffic.payload_bytes);
  p.validate();
  traffic.validate();

  fs::path tbs_path = f.tbs_map.empty() ? cfg.tbs_map : fs::path(f.tbs_map);
  const TbsMap map = tbs_path.empty() ? TbsMap{} : TbsMap::load(tbs_path);
  const CapacityReport r = capacity_report(p, traffic, carrier, map);

  json out = r.to_json();
  out["link"] = p.to_json();
  out["traffic"] = {{"reports_per_day", traffic.reports_per_day}, {"payload_bytes", traffic.payload_bytes}};
  out["carrier"] = {{"system_bw_hz", carrier.system_bw_hz},
                    {"subcarrier_hz", carrier.subcarrier_hz},
                    {"ru_duration_s", carrier.ru_duration_s}};
  if (!g.out_dir.empty()) {
    fs::create_directories(g.out_dir);
    io::write_file_atomic(fs::path(g.out_dir) / "capacity.json", out.dump(2) + "\n");
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_synth(const GlobalOptions& g, const std::string& spec_path) {
  const ScenarioSpec spec = ScenarioSpec::load(spec_path);
  const fs::path dir = g.out_dir.empty() ? fs::path("out") : fs::path(g.out_dir);
  const std::uint64_t seed = g.seed.value_or(1);
  const ScenarioFiles files = write_scenario(spec, dir, seed);
  json out{{"seed", seed}, {"env_manifest", files.env_manifest.string()}, {"config", files.config.string()}};
  if (!files.biomass_manifest.empty()) out["biomass_manifest"] = files.biomass_manifest.string();
  if (!files.incidents.empty()) out["incidents"] = files.incidents.string();
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wildfire detection with satellite-linked ground sensors: fire spread, sweeps, link budget"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::uint64_t seed = 0;
  app.add_option("--config", g.config, "Run config JSON")->check(CLI::ExistingFile);
  app.add_option("--out-dir", g.out_dir, "Output directory");
  app.add_option("--workers", g.workers, "Worker threads (default: hardware concurrency)")
      ->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Base seed (deployment, sweep or synthesis)");
  app.add_option("--set", g.overrides, "Override a config field, e.g. --set fire.u_max_ms=0.2")
      ->take_all()
      ->allow_extra_args(false);

  auto* sim = app.add_subcommand("simulate", "Simulate one incident");
  std::string incident_id;
  bool trace = false;
  sim->add_option("--incident", incident_id, "Incident id")->required();
  sim->add_flag("--trace", trace, "Write the hourly trace CSV");

  auto* sw = app.add_subcommand("sweep", "Sweep sensor counts over the incident season");
  SweepOverrides so;
  sw->add_option("--counts", so.counts, "Sensor counts (ascending)");
  sw->add_option("--trials", so.trials, "Deployments per count")->check(CLI::PositiveNumber);
  sw->add_option("--baseline", so.baseline, "historical | simulated-zero-sensor");

  auto* lb = app.add_subcommand("linkbudget", "Uplink CNR and supportable sensor count");
  LinkFlags lf;
  lb->add_option("--params", lf.params, "Link parameter JSON")->check(CLI::ExistingFile);
  lb->add_option("--tbs-map", lf.tbs_map, "TBS CSV (min_cnr_db,bits_per_ru)")->check(CLI::ExistingFile);
  lb->add_option("--eirp-dbm", lf.eirp_dbm);
  lb->add_option("--g-over-t-db-k", lf.g_over_t_db_k);
  lb->add_option("--bandwidth-hz", lf.bandwidth_hz, "Subcarrier bandwidth");
  lb->add_option("--freq-mhz", lf.freq_mhz);
  lb->add_option("--distance-km", lf.distance_km);
  lb->add_option("--pl-atmos-db", lf.pl_atmos_db);
  lb->add_option("--pl-shadow-db", lf.pl_shadow_db);
  lb->add_option("--pl-scint-db", lf.pl_scint_db);
  lb->add_option("--pl-polar-db", lf.pl_polar_db);
  lb->add_option("--elevation-deg", lf.elevation_deg);
  lb->add_option("--system-bw-hz", lf.system_bw_hz, "Total uplink bandwidth");
  lb->add_option("--subcarrier-hz", lf.subcarrier_hz);
  lb->add_option("--ru-duration-s", lf.ru_duration_s);
  lb->add_option("--reports-per-day", lf.reports_per_day);
  lb->add_option("--payload-bytes", lf.payload_bytes);

  auto* syn = app.add_subcommand("synth-env", "Generate a synthetic env grid or full scenario");
  std::string spec_path;
  syn->add_option("--spec", spec_path, "Synthetic spec JSON")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (*seed_opt) g.seed = seed;

  try {
    if (*sim) return cmd_simulate(g, incident_id, trace);
    if (*sw) return cmd_sweep(g, so);
    if (*lb) return cmd_linkbudget(g, lf);
    if (*syn) return cmd_synth(g, spec_path);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
