#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include <json.hpp>

namespace wildfire {

inline constexpr double kBoltzmannDbWPerKHz = -228.6;

/// Uplink budget inputs for a GEO NB-IoT NTN link, defaults at 10 degrees elevation.
struct LinkParams {
  double eirp_dbm = 23.0;
  double g_over_t_db_k = 19.0;
  double bandwidth_hz = 3750.0;  // one subcarrier
  double freq_mhz = 1500.0;
  double distance_km = 40581.0;
  double pl_atmos_db = 0.16;
  double pl_shadow_db = 3.0;
  double pl_scint_db = 2.2;
  double pl_polar_db = 3.0;
  double elevation_deg = 10.0;  // annotation only

  void validate() const;
  static LinkParams from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct TrafficModel {
  double reports_per_day = 2.0;
  double payload_bytes = 50.0;

  void validate() const;
};

/// Resource-unit framing of the NB-IoT uplink.
struct CarrierConfig {
  double system_bw_hz = 180000.0;
  double subcarrier_hz = 3750.0;
  double ru_duration_s = 0.032;
};

/// Threshold table: the largest bits_per_ru whose min_cnr_db <= CNR applies.
class TbsMap {
 public:
  /// Single row: 8.0 dB -> 144 bits per RU.
  TbsMap();
  explicit TbsMap(std::vector<std::pair<double, int>> rows);

  /// CSV with header min_cnr_db,bits_per_ru.
  static TbsMap load(const std::filesystem::path& path);

  /// Throws LinkInfeasibleError below the lowest threshold.
  int bits_per_ru(double cnr_db) const;
  const std::vector<std::pair<double, int>>& rows() const { return rows_; }

 private:
  std::vector<std::pair<double, int>> rows_;
};

struct CapacityReport {
  double fspl_db = 0.0;
  double cnr_db = 0.0;
  int bits_per_ru = 0;
  double peak_rate_bps = 0.0;
  double per_sensor_bps = 0.0;
  std::uint64_t supportable_sensors = 0;

  nlohmann::json to_json() const;
};

/// 32.45 + 20 log10(d_km) + 20 log10(f_MHz)
double fspl_db(double distance_km, double freq_mhz);
/// EIRP (dBW) + G/T - FSPL - losses - 10 log10(BW) - k
double cnr_db(const LinkParams& p);
int bits_per_ru(double cnr_db, const TbsMap& map = {});
double peak_rate_bps(double bits_ru, double system_bw_hz, double subcarrier_hz, double ru_duration_s);
double per_sensor_bps(const TrafficModel& t);
std::uint64_t supportable_sensors(double peak_bps, double per_sensor);

CapacityReport capacity_report(const LinkParams& p, const TrafficModel& t, const CarrierConfig& carrier = {},
                               const TbsMap& map = {});

}  // namespace wildfire
