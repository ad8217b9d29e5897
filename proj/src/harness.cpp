#include "wildfire/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "wildfire/error.hpp"
#include "wildfire/io.hpp"

namespace wildfire {

const char* to_string(BaselineMode m) {
  return m == BaselineMode::Historical ? "historical" : "simulated-zero-sensor";
}

BaselineMode baseline_from_string(const std::string& s) {
  if (s == "historical") return BaselineMode::Historical;
  if (s == "simulated-zero-sensor") return BaselineMode::SimulatedZeroSensor;
  throw ValidationError("unknown baseline mode '" + s + "'");
}

void SweepConfig::validate() const {
  if (sensor_counts.empty()) throw ValidationError("sweep.sensor_counts must not be empty");
  if (!std::is_sorted(sensor_counts.begin(), sensor_counts.end())) {
    throw ValidationError("sweep.sensor_counts must be ascending");
  }
  if (trials < 1) throw ValidationError("sweep.trials must be >= 1");
  if (!(usd_per_ton >= 0.0)) throw ValidationError("sweep.usd_per_ton must be >= 0");
  for (double c : unit_sensor_cost_usd) {
    if (!(c >= 0.0)) throw ValidationError("sweep.unit_sensor_cost_usd entries must be >= 0");
  }
  if (!(cap_hours >= 0.0)) throw ValidationError("sweep.cap_hours must be >= 0");
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const auto threads = static_cast<std::size_t>(std::max(1, workers));
  if (threads == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t k = 0; k < std::min(threads, n); ++k) pool.emplace_back(worker);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

SeasonResult run_season(const std::vector<Incident>& incidents, const EnvGrid& env, const BiomassGrid& bio,
                        const SensorIndex& sensors, const EvolutionConfig& evo, const CarbonConstants& carbon,
                        int workers) {
  SeasonResult season;
  season.incidents.resize(incidents.size());
  std::vector<double> tons(incidents.size(), 0.0);
  parallel_for(incidents.size(), workers, [&](std::size_t i) {
    season.incidents[i] = simulate_incident(incidents[i], env, sensors, evo);
    const auto& res = season.incidents[i];
    tons[i] = emission_tons(res.burned_area_km2, average_biomass(res.final_circle, bio), carbon);
  });
  for (std::size_t i = 0; i < incidents.size(); ++i) {
    season.totals.burned_hours += season.incidents[i].burned_hours;
    season.totals.burned_area_km2 += season.incidents[i].burned_area_km2;
    season.totals.carbon_tons += tons[i];
    season.totals.detected += season.incidents[i].detected ? 1 : 0;
  }
  season.totals.carbon_price_usd = carbon_price(season.totals.carbon_tons, carbon.usd_per_ton);
  return season;
}

SeasonTotals historical_baseline(const std::vector<Incident>& incidents, const BiomassGrid& bio,
                                 const CarbonConstants& carbon) {
  SeasonTotals t;
  for (const auto& inc : incidents) {
    if (!inc.historical_burn_hours || !inc.historical_area_km2) {
      throw ValidationError("incident " + inc.id + " has no historical duration/area for the historical baseline");
    }
    t.burned_hours += *inc.historical_burn_hours;
    t.burned_area_km2 += *inc.historical_area_km2;
  }
  t.carbon_tons = emission_tons(t.burned_area_km2, bio.mean(), carbon);
  t.carbon_price_usd = carbon_price(t.carbon_tons, carbon.usd_per_ton);
  return t;
}

SweepResult sweep(const std::vector<Incident>& incidents, const EnvGrid& env, const BiomassGrid& bio,
                  const Rect& region, const SweepConfig& cfg, const EvolutionConfig& evo_in,
                  const CarbonConstants& carbon_in, int workers) {
  cfg.validate();
  evo_in.validate();
  EvolutionConfig evo = evo_in;
  evo.max_hours = cfg.cap_hours;
  evo.keep_trace = false;
  CarbonConstants carbon = carbon_in;
  carbon.usd_per_ton = cfg.usd_per_ton;
  carbon.validate();

  SweepResult result;
  if (cfg.baseline == BaselineMode::Historical) {
    result.baseline = historical_baseline(incidents, bio, carbon);
  } else {
    result.baseline = run_season(incidents, env, bio, SensorIndex{}, evo, carbon, workers).totals;
  }

  for (auto count : cfg.sensor_counts) {
    SweepRow row;
    row.n_sensors = count;
    row.savings_usd.assign(cfg.unit_sensor_cost_usd.size(), 0.0);
    for (int trial = 0; trial < cfg.trials; ++trial) {
      TrialRow tr;
      tr.n_sensors = count;
      tr.trial = trial;
      tr.seed = cfg.seed + static_cast<std::uint64_t>(trial);
      const SensorField field = deploy_uniform(count, region, tr.seed);
      const SensorIndex index(field);
      tr.totals = run_season(incidents, env, bio, index, evo, carbon, workers).totals;
      for (double unit : cfg.unit_sensor_cost_usd) {
        tr.savings_usd.push_back(
            savings(result.baseline.carbon_price_usd, tr.totals.carbon_price_usd, count, unit).savings_usd);
      }
      row.mean_burned_hours += tr.totals.burned_hours;
      row.mean_burned_area_km2 += tr.totals.burned_area_km2;
      row.carbon_tons += tr.totals.carbon_tons;
      result.trials.push_back(std::move(tr));
    }
    const double n = cfg.trials;
    row.mean_burned_hours /= n;
    row.mean_burned_area_km2 /= n;
    row.carbon_tons /= n;
    row.carbon_price_usd = carbon_price(row.carbon_tons, carbon.usd_per_ton);
    for (std::size_t k = 0; k < cfg.unit_sensor_cost_usd.size(); ++k) {
      row.savings_usd[k] =
          savings(result.baseline.carbon_price_usd, row.carbon_price_usd, count, cfg.unit_sensor_cost_usd[k])
              .savings_usd;
    }
    result.summary.push_back(std::move(row));
  }
  return result;
}

namespace {

std::string cost_columns(const SweepConfig& cfg) {
  std::string cols;
  for (double c : cfg.unit_sensor_cost_usd) cols += ",savings_usd@cost" + io::format_double(c);
  return cols;
}

}  // namespace

std::string sweep_csv(const SweepResult& r, const SweepConfig& cfg) {
  std::ostringstream out;
  out << "n_sensors,trial,burned_hours,burned_area_km2,carbon_tons,carbon_price_usd" << cost_columns(cfg) << '\n';
  for (const auto& t : r.trials) {
    out << t.n_sensors << ',' << t.trial << ',' << io::format_double(t.totals.burned_hours) << ','
        << io::format_double(t.totals.burned_area_km2) << ',' << io::format_double(t.totals.carbon_tons) << ','
        << io::format_double(t.totals.carbon_price_usd);
    for (double s : t.savings_usd) out << ',' << io::format_double(s);
    out << '\n';
  }
  return out.str();
}

std::string summary_csv(const SweepResult& r, const SweepConfig& cfg) {
  std::ostringstream out;
  out << "n_sensors,mean_burned_hours,mean_burned_area_km2,carbon_tons,carbon_price_usd" << cost_columns(cfg)
      << '\n';
  out << "baseline," << io::format_double(r.baseline.burned_hours) << ','
      << io::format_double(r.baseline.burned_area_km2) << ',' << io::format_double(r.baseline.carbon_tons) << ','
      << io::format_double(r.baseline.carbon_price_usd);
  for (std::size_t k = 0; k < cfg.unit_sensor_cost_usd.size(); ++k) out << ",0";
  out << '\n';
  for (const auto& row : r.summary) {
    out << row.n_sensors << ',' << io::format_double(row.mean_burned_hours) << ','
        << io::format_double(row.mean_burned_area_km2) << ',' << io::format_double(row.carbon_tons) << ','
        << io::format_double(row.carbon_price_usd);
    for (double s : row.savings_usd) out << ',' << io::format_double(s);
    out << '\n';
  }
  return out.str();
}

}  // namespace wildfire
