#include "wildfire/scenario.hpp"

#include "wildfire/error.hpp"
#include "wildfire/io.hpp"

namespace wildfire {

using nlohmann::json;
namespace fs = std::filesystem;

ScenarioSpec ScenarioSpec::from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("scenario spec must be a JSON object");
  ScenarioSpec s;
  if (!j.contains("env")) {
    s.env = SynthSpec::from_json(j);
    return s;
  }
  s.env = SynthSpec::from_json(j.at("env"));
  if (j.contains("biomass")) s.biomass = BiomassSynthSpec::from_json(j.at("biomass"));
  if (j.contains("incidents")) s.incidents = IncidentSynthSpec::from_json(j.at("incidents"));
  if (j.contains("geo")) {
    const auto& g = j.at("geo");
    try {
      s.geo.lat_min = g.value("lat_min", s.geo.lat_min);
      s.geo.lat_max = g.value("lat_max", s.geo.lat_max);
      s.geo.lon_min = g.value("lon_min", s.geo.lon_min);
      s.geo.lon_max = g.value("lon_max", s.geo.lon_max);
      s.geo.width_km = g.value("width_km", s.geo.width_km);
      s.geo.height_km = g.value("height_km", s.geo.height_km);
    } catch (const json::exception& e) {
      throw ValidationError(std::string("scenario geo: ") + e.what());
    }
    s.geo.validate();
  }
  return s;
}

ScenarioSpec ScenarioSpec::load(const fs::path& path) {
  json j;
  try {
    j = json::parse(io::read_file(path));
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return from_json(j);
}

ScenarioFiles write_scenario(const ScenarioSpec& spec, const fs::path& dir, std::uint64_t seed) {
  fs::create_directories(dir);
  ScenarioFiles files;
  const EnvGrid env = synth_env(spec.env, seed);
  files.env_manifest = save_env_grid(env, dir, "env");

  json config{{"env_manifest", "env.json"},
              {"geo",
               {{"lat_min", spec.geo.lat_min},
                {"lat_max", spec.geo.lat_max},
                {"lon_min", spec.geo.lon_min},
                {"lon_max", spec.geo.lon_max},
                {"width_km", spec.geo.width_km},
                {"height_km", spec.geo.height_km}}}};
  if (spec.biomass) {
    const BiomassGrid bio = synth_biomass(*spec.biomass, seed);
    check_coverage(bio, env);
    files.biomass_manifest = save_biomass_grid(bio, dir, "biomass");
    config["biomass_manifest"] = "biomass.json";
  }
  if (spec.incidents) {
    files.incidents = dir / "incidents.csv";
    write_synth_incidents(files.incidents, *spec.incidents, spec.geo, env.start(), seed);
    config["incidents"] = "incidents.csv";
  }
  files.config = dir / "config.json";
  io::write_file_atomic(files.config, config.dump(2) + "\n");
  return files;
}

}  // namespace wildfire
