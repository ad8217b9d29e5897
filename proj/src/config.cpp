#include "wildfire/config.hpp"

#include "wildfire/error.hpp"
#include "wildfire/io.hpp"

namespace wildfire {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Reads j[key] into out when present; type errors name the dotted field.
template <typename T>
void read(const json& j, const char* key, T& out, const std::string& prefix) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError("config field '" + prefix + key + "' has the wrong type");
  }
}

void read_path(const json& j, const char* key, fs::path& out, const fs::path& base) {
  std::string s;
  read(j, key, s, "");
  if (s.empty()) return;
  fs::path p(s);
  out = p.is_absolute() ? p : base / p;
}

const json& section(const json& j, const char* key) {
  static const json empty = json::object();
  if (!j.contains(key)) return empty;
  if (!j.at(key).is_object()) throw ValidationError(std::string("config field '") + key + "' must be an object");
  return j.at(key);
}

}  // namespace

void RunConfig::validate() const {
  geo.validate();
  evolution.validate();
  sweep.validate();
  carbon.validate();
  link.validate();
  traffic.validate();
  if (!(carrier.system_bw_hz > 0.0) || !(carrier.subcarrier_hz > 0.0) || !(carrier.ru_duration_s > 0.0)) {
    throw ValidationError("config field 'carrier' values must be > 0");
  }
}

RunConfig RunConfig::from_json(const json& j, const fs::path& base) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  RunConfig c;
  read_path(j, "env_manifest", c.env_manifest, base);
  read_path(j, "biomass_manifest", c.biomass_manifest, base);
  read_path(j, "incidents", c.incidents, base);
  read_path(j, "sensors", c.sensors, base);
  read_path(j, "tbs_map", c.tbs_map, base);
  read_path(j, "output_dir", c.output_dir, base);

  const auto& g = section(j, "geo");
  read(g, "lat_min", c.geo.lat_min, "geo.");
  read(g, "lat_max", c.geo.lat_max, "geo.");
  read(g, "lon_min", c.geo.lon_min, "geo.");
  read(g, "lon_max", c.geo.lon_max, "geo.");
  read(g, "width_km", c.geo.width_km, "geo.");
  read(g, "height_km", c.geo.height_km, "geo.");

  const auto& f = section(j, "fire");
  auto& fc = c.evolution.fire;
  read(f, "u_max_ms", fc.u_max_ms, "fire.");
  read(f, "g0", fc.g0, "fire.");
  read(f, "wind_scale_m2s2", fc.wind_scale_m2s2, "fire.");
  read(f, "beta_e", fc.beta_e, "fire.");
  read(f, "back_ratio", fc.back_ratio, "fire.");
  read(f, "lb_gain", fc.lb_gain, "fire.");
  read(f, "lb_decay", fc.lb_decay, "fire.");

  const auto& e = section(j, "evolution");
  read(e, "dt_s", c.evolution.dt_s, "evolution.");
  read(e, "snap_km", c.evolution.snap_km, "evolution.");
  read(e, "margin_km", c.evolution.margin_km, "evolution.");
  read(e, "prune", c.evolution.prune, "evolution.");
  read(e, "max_hours", c.evolution.max_hours, "evolution.");
  read(e, "detect_at_ignition", c.evolution.detect_at_ignition, "evolution.");

  const auto& s = section(j, "sweep");
  read(s, "sensor_counts", c.sweep.sensor_counts, "sweep.");
  read(s, "trials", c.sweep.trials, "sweep.");
  read(s, "seed", c.sweep.seed, "sweep.");
  read(s, "unit_sensor_cost_usd", c.sweep.unit_sensor_cost_usd, "sweep.");
  read(s, "cap_hours", c.sweep.cap_hours, "sweep.");
  std::string baseline = to_string(c.sweep.baseline);
  read(s, "baseline", baseline, "sweep.");
  c.sweep.baseline = baseline_from_string(baseline);

  const auto& cb = section(j, "carbon");
  read(cb, "total_biomass_factor", c.carbon.total_biomass_factor, "carbon.");
  read(cb, "unit_factor", c.carbon.unit_factor, "carbon.");
  read(cb, "usd_per_ton", c.carbon.usd_per_ton, "carbon.");
  c.sweep.usd_per_ton = c.carbon.usd_per_ton;

  if (j.contains("link")) c.link = LinkParams::from_json(section(j, "link"));
  const auto& t = section(j, "traffic");
  read(t, "reports_per_day", c.traffic.reports_per_day, "traffic.");
  read(t, "payload_bytes", c.traffic.payload_bytes, "traffic.");
  const auto& cr = section(j, "carrier");
  read(cr, "system_bw_hz", c.carrier.system_bw_hz, "carrier.");
  read(cr, "subcarrier_hz", c.carrier.subcarrier_hz, "carrier.");
  read(cr, "ru_duration_s", c.carrier.ru_duration_s, "carrier.");

  const auto& d = section(j, "deploy");
  read(d, "count", c.deploy_count, "deploy.");
  read(d, "seed", c.deploy_seed, "deploy.");

  c.validate();
  return c;
}

RunConfig RunConfig::load(const fs::path& path) {
  json j;
  try {
    j = json::parse(io::read_file(path));
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return from_json(j, path.parent_path());
}

json RunConfig::to_json() const {
  const auto& fc = evolution.fire;
  return {
      {"env_manifest", env_manifest.string()},
      {"biomass_manifest", biomass_manifest.string()},
      {"incidents", incidents.string()},
      {"sensors", sensors.string()},
      {"tbs_map", tbs_map.string()},
      {"output_dir", output_dir.string()},
      {"geo",
       {{"lat_min", geo.lat_min}, {"lat_max", geo.lat_max}, {"lon_min", geo.lon_min}, {"lon_max", geo.lon_max},
        {"width_km", geo.width_km}, {"height_km", geo.height_km}}},
      {"fire",
       {{"u_max_ms", fc.u_max_ms}, {"g0", fc.g0}, {"wind_scale_m2s2", fc.wind_scale_m2s2}, {"beta_e", fc.beta_e},
        {"back_ratio", fc.back_ratio}, {"lb_gain", fc.lb_gain}, {"lb_decay", fc.lb_decay}}},
      {"evolution",
       {{"dt_s", evolution.dt_s}, {"snap_km", evolution.snap_km}, {"margin_km", evolution.margin_km},
        {"prune", evolution.prune}, {"max_hours", evolution.max_hours},
        {"detect_at_ignition", evolution.detect_at_ignition}}},
      {"sweep",
       {{"sensor_counts", sweep.sensor_counts}, {"trials", sweep.trials}, {"seed", sweep.seed},
        {"unit_sensor_cost_usd", sweep.unit_sensor_cost_usd}, {"cap_hours", sweep.cap_hours},
        {"baseline", to_string(sweep.baseline)}}},
      {"carbon",
       {{"total_biomass_factor", carbon.total_biomass_factor}, {"unit_factor", carbon.unit_factor},
        {"usd_per_ton", carbon.usd_per_ton}}},
      {"link", link.to_json()},
      {"traffic", {{"reports_per_day", traffic.reports_per_day}, {"payload_bytes", traffic.payload_bytes}}},
      {"carrier",
       {{"system_bw_hz", carrier.system_bw_hz}, {"subcarrier_hz", carrier.subcarrier_hz},
        {"ru_duration_s", carrier.ru_duration_s}}},
      {"deploy", {{"count", deploy_count}, {"seed", deploy_seed}}},
  };
}

}  // namespace wildfire
