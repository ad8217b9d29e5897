#include "wildfire/linkbudget.hpp"

#include <algorithm>
#include <cmath>

#include "wildfire/error.hpp"
#include "wildfire/io.hpp"

namespace wildfire {

using nlohmann::json;

void LinkParams::validate() const {
  for (auto [v, name] : {std::pair{pl_atmos_db, "pl_atmos_db"}, std::pair{pl_shadow_db, "pl_shadow_db"},
                         std::pair{pl_scint_db, "pl_scint_db"}, std::pair{pl_polar_db, "pl_polar_db"}}) {
    if (!(v >= 0.0)) throw ValidationError(std::string(name) + " must be >= 0");
  }
  if (!(bandwidth_hz > 0.0)) throw ValidationError("bandwidth_hz must be > 0");
  if (!(freq_mhz > 0.0)) throw ValidationError("freq_mhz must be > 0");
  if (!(distance_km > 0.0)) throw ValidationError("distance_km must be > 0");
  if (!std::isfinite(eirp_dbm) || !std::isfinite(g_over_t_db_k)) throw ValidationError("EIRP and G/T must be finite");
}

LinkParams LinkParams::from_json(const json& j) {
  LinkParams p;
  try {
    p.eirp_dbm = j.value("eirp_dbm", p.eirp_dbm);
    p.g_over_t_db_k = j.value("g_over_t_db_k", p.g_over_t_db_k);
    p.bandwidth_hz = j.value("bandwidth_hz", p.bandwidth_hz);
    p.freq_mhz = j.value("freq_mhz", p.freq_mhz);
    p.distance_km = j.value("distance_km", p.distance_km);
    p.pl_atmos_db = j.value("pl_atmos_db", p.pl_atmos_db);
    p.pl_shadow_db = j.value("pl_shadow_db", p.pl_shadow_db);
    p.pl_scint_db = j.value("pl_scint_db", p.pl_scint_db);
    p.pl_polar_db = j.value("pl_polar_db", p.pl_polar_db);
    p.elevation_deg = j.value("elevation_deg", p.elevation_deg);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("link params: ") + e.what());
  }
  p.validate();
  return p;
}

json LinkParams::to_json() const {
  return {{"eirp_dbm", eirp_dbm},       {"g_over_t_db_k", g_over_t_db_k}, {"bandwidth_hz", bandwidth_hz},
          {"freq_mhz", freq_mhz},       {"distance_km", distance_km},     {"pl_atmos_db", pl_atmos_db},
          {"pl_shadow_db", pl_shadow_db}, {"pl_scint_db", pl_scint_db},   {"pl_polar_db", pl_polar_db},
          {"elevation_deg", elevation_deg}};
}

void TrafficModel::validate() const {
  if (!(reports_per_day > 0.0) || !(payload_bytes > 0.0)) {
    throw ValidationError("traffic model: reports_per_day and payload_bytes must be > 0");
  }
}

TbsMap::TbsMap() : rows_{{8.0, 144}} {}

TbsMap::TbsMap(std::vector<std::pair<double, int>> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw ValidationError("TBS map is empty");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!std::isfinite(rows_[i].first) || rows_[i].second <= 0) throw ValidationError("TBS map: invalid row");
    if (i > 0 && !(rows_[i].first > rows_[i - 1].first && rows_[i].second > rows_[i - 1].second)) {
      throw ValidationError("TBS map must be strictly increasing in both columns");
    }
  }
}

TbsMap TbsMap::load(const std::filesystem::path& path) {
  auto table = io::read_csv(path);
  if (table.header.size() != 2 || table.header[0] != "min_cnr_db" || table.header[1] != "bits_per_ru") {
    throw ValidationError(path.string() + ": expected header min_cnr_db,bits_per_ru");
  }
  std::vector<std::pair<double, int>> rows;
  for (const auto& [lineno, row] : table.rows) {
    double cnr = 0.0;
    long long bits = 0;
    if (row.size() != 2 || !io::parse_double(row[0], cnr) || !io::parse_int(row[1], bits)) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": unparsable row");
    }
    rows.emplace_back(cnr, static_cast<int>(bits));
  }
  try {
    return TbsMap(std::move(rows));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

int TbsMap::bits_per_ru(double cnr) const {
  if (std::isnan(cnr) || cnr < rows_.front().first) {
    throw LinkInfeasibleError("CNR " + std::to_string(cnr) + " dB is below the lowest TBS threshold (" +
                              std::to_string(rows_.front().first) + " dB)");
  }
  auto it = std::upper_bound(rows_.begin(), rows_.end(), cnr,
                             [](double v, const std::pair<double, int>& row) { return v < row.first; });
  return std::prev(it)->second;
}

json CapacityReport::to_json() const {
  return {{"fspl_db", fspl_db},
          {"cnr_db", cnr_db},
          {"bits_per_ru", bits_per_ru},
          {"peak_rate_bps", peak_rate_bps},
          {"per_sensor_bps", per_sensor_bps},
          {"supportable_sensors", supportable_sensors}};
}

double fspl_db(double distance_km, double freq_mhz) {
  if (!(distance_km > 0.0) || !(freq_mhz > 0.0)) throw ValidationError("fspl_db: inputs must be > 0");
  return 32.45 + 20.0 * std::log10(distance_km) + 20.0 * std::log10(freq_mhz);
}

double cnr_db(const LinkParams& p) {
  p.validate();
  const double eirp_dbw = p.eirp_dbm - 30.0;
  return eirp_dbw + p.g_over_t_db_k - fspl_db(p.distance_km, p.freq_mhz) - p.pl_atmos_db - p.pl_shadow_db -
         p.pl_scint_db - p.pl_polar_db - 10.0 * std::log10(p.bandwidth_hz) - kBoltzmannDbWPerKHz;
}

int bits_per_ru(double cnr, const TbsMap& map) { return map.bits_per_ru(cnr); }

double peak_rate_bps(double bits_ru, double system_bw_hz, double subcarrier_hz, double ru_duration_s) {
  if (!(bits_ru >= 0.0) || !(system_bw_hz > 0.0) || !(subcarrier_hz > 0.0) || !(ru_duration_s > 0.0)) {
    throw ValidationError("peak_rate_bps: invalid inputs");
  }
  const double ratio = system_bw_hz / subcarrier_hz;
  const double units = std::round(ratio);
  if (units < 1.0 || std::abs(ratio - units) > 1e-9 * units) {
    throw ValidationError("system bandwidth must be a whole number of subcarriers");
  }
  return bits_ru * units / ru_duration_s;
}

double per_sensor_bps(const TrafficModel& t) {
  t.validate();
  return t.payload_bytes * 8.0 * t.reports_per_day / 86400.0;
}

std::uint64_t supportable_sensors(double peak_bps, double per_sensor) {
  if (!(per_sensor > 0.0)) throw ValidationError("per-sensor rate must be > 0");
  if (!(peak_bps > 0.0)) return 0;
  return static_cast<std::uint64_t>(std::floor(peak_bps / per_sensor));
}

CapacityReport capacity_report(const LinkParams& p, const TrafficModel& t, const CarrierConfig& carrier,
                               const TbsMap& map) {
  CapacityReport r;
  r.fspl_db = fspl_db(p.distance_km, p.freq_mhz);
  r.cnr_db = cnr_db(p);
  r.bits_per_ru = bits_per_ru(r.cnr_db, map);
  r.peak_rate_bps = peak_rate_bps(r.bits_per_ru, carrier.system_bw_hz, carrier.subcarrier_hz, carrier.ru_duration_s);
  r.per_sensor_bps = per_sensor_bps(t);
  r.supportable_sensors = supportable_sensors(r.peak_rate_bps, r.per_sensor_bps);
  return r;
}

}  // namespace wildfire
