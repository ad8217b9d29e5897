#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include <json.hpp>

#include "wildfire/envdata.hpp"

namespace wildfire {

/// A synthetic scenario: env grid plus optional biomass raster and incident list.
/// A bare env spec (no "env" key) is accepted as a scenario with only an env part.
struct ScenarioSpec {
  SynthSpec env;
  std::optional<BiomassSynthSpec> biomass;
  std::optional<IncidentSynthSpec> incidents;
  GeoTransform geo;

  static ScenarioSpec from_json(const nlohmann::json& j);
  static ScenarioSpec load(const std::filesystem::path& path);
};

struct ScenarioFiles {
  std::filesystem::path env_manifest;
  std::filesystem::path biomass_manifest;  // empty when the spec has no biomass part
  std::filesystem::path incidents;         // empty when the spec has no incident part
  std::filesystem::path config;            // run config pointing at the files above
};

/// Generates every part of the scenario into dir. The same seed gives identical files.
ScenarioFiles write_scenario(const ScenarioSpec& spec, const std::filesystem::path& dir, std::uint64_t seed);

}  // namespace wildfire
