#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include <json.hpp>

#include "wildfire/carbon.hpp"
#include "wildfire/envdata.hpp"
#include "wildfire/evolution.hpp"
#include "wildfire/firekernel.hpp"
#include "wildfire/harness.hpp"
#include "wildfire/linkbudget.hpp"

namespace wildfire {

/// Everything a run needs, read from one JSON file. Every model constant has
/// a default; relative paths resolve against the config file's directory.
struct RunConfig {
  std::filesystem::path env_manifest;
  std::filesystem::path biomass_manifest;
  std::filesystem::path incidents;
  std::filesystem::path sensors;  // optional; otherwise `deploy`
  std::filesystem::path tbs_map;  // optional; otherwise the single default row
  std::filesystem::path output_dir{"out"};

  GeoTransform geo;
  EvolutionConfig evolution;  // includes the fire constants
  SweepConfig sweep;
  CarbonConstants carbon;
  LinkParams link;
  TrafficModel traffic;
  CarrierConfig carrier;

  // sensor deployment for `simulate` when no sensor file is given
  std::uint64_t deploy_count = 0;
  std::uint64_t deploy_seed = 1;

  void validate() const;
  /// Effective configuration, including defaults.
  nlohmann::json to_json() const;

  static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path);
};

}  // namespace wildfire
