#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wildfire/carbon.hpp"
#include "wildfire/envdata.hpp"
#include "wildfire/evolution.hpp"
#include "wildfire/sensors.hpp"

namespace wildfire {

enum class BaselineMode { Historical, SimulatedZeroSensor };
const char* to_string(BaselineMode m);
BaselineMode baseline_from_string(const std::string& s);

struct SweepConfig {
  std::vector<std::uint64_t> sensor_counts{100000, 1000000};
  int trials = 10;
  std::uint64_t seed = 1;  // trial i deploys with seed + i
  double usd_per_ton = 20.0;
  std::vector<double> unit_sensor_cost_usd{10.0, 20.0, 50.0, 100.0};
  double cap_hours = 240.0;  // for incidents without a historical duration
  BaselineMode baseline = BaselineMode::Historical;

  void validate() const;
};

struct SeasonTotals {
  double burned_hours = 0.0;
  double burned_area_km2 = 0.0;
  double carbon_tons = 0.0;
  double carbon_price_usd = 0.0;
  std::size_t detected = 0;
};

struct SeasonResult {
  std::vector<IncidentResult> incidents;
  SeasonTotals totals;
};

/// Calls fn(i) for i in [0, n) on up to `workers` threads. Work is claimed
/// dynamically; callers write results into slot i so the reduction order is fixed.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

/// Simulates every incident against the same sensors. Carbon per incident
/// uses the mean biomass under its own final circle.
SeasonResult run_season(const std::vector<Incident>& incidents, const EnvGrid& env, const BiomassGrid& bio,
                        const SensorIndex& sensors, const EvolutionConfig& evo, const CarbonConstants& carbon,
                        int workers = 1);

/// Totals of the incidents' own historical durations and areas. Carbon uses
/// the mean of the whole biomass raster. Throws if any incident lacks history.
SeasonTotals historical_baseline(const std::vector<Incident>& incidents, const BiomassGrid& bio,
                                 const CarbonConstants& carbon);

struct TrialRow {
  std::uint64_t n_sensors = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  SeasonTotals totals;
  std::vector<double> savings_usd;  // one per unit sensor cost
};

struct SweepRow {
  std::uint64_t n_sensors = 0;
  double mean_burned_hours = 0.0;
  double mean_burned_area_km2 = 0.0;
  double carbon_tons = 0.0;
  double carbon_price_usd = 0.0;
  std::vector<double> savings_usd;
};

struct SweepResult {
  SeasonTotals baseline;
  std::vector<TrialRow> trials;  // ordered by (count index, trial)
  std::vector<SweepRow> summary;
};

SweepResult sweep(const std::vector<Incident>& incidents, const EnvGrid& env, const BiomassGrid& bio,
                  const Rect& region, const SweepConfig& cfg, const EvolutionConfig& evo,
                  const CarbonConstants& carbon, int workers = 1);

std::string sweep_csv(const SweepResult& r, const SweepConfig& cfg);
std::string summary_csv(const SweepResult& r, const SweepConfig& cfg);

}  // namespace wildfire
