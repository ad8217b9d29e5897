#pragma once

// Shared scenario builders for the unit and acceptance tests.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "wildfire/envdata.hpp"
#include "wildfire/io.hpp"

namespace fixtures {

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "wildfire_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// Incident CSV whose durations sum to `total_hours` (quarter-hour steps) and
/// whose acre column converts to `total_km2`. Starts fall in [0, start_hours).
inline void write_historical_incidents(const std::filesystem::path& path, int count, double total_hours,
                                       double total_km2, int start_hours, const wildfire::GeoTransform& gt = {}) {
  using namespace std::chrono;
  const auto t0 = wildfire::EnvGrid::default_start();
  const double total_acres = total_km2 / wildfire::kKm2PerAcre;
  const long total_quarters = std::lround(total_hours * 4.0);
  std::ofstream out(path);
  out << "id,start_iso8601,lat_deg,lon_deg,contained_iso8601,area_acre\n";
  long used_quarters = 0;
  double used_acres = 0.0;
  for (int i = 0; i < count; ++i) {
    long quarters;
    double acres;
    if (i + 1 < count) {
      quarters = total_quarters / count + (i % 7) - 3;
      acres = std::floor(total_acres / count * (0.5 + (i % 5) * 0.25));
    } else {
      quarters = total_quarters - used_quarters;
      acres = total_acres - used_acres;
    }
    used_quarters += quarters;
    used_acres += acres;
    const auto start = t0 + hours((i * 37) % start_hours) + minutes((i * 13) % 60);
    const auto end = start + minutes(15 * quarters);
    const double fy = 0.1 + 0.8 * ((i * 53) % 101) / 100.0;
    const double fx = 0.1 + 0.8 * ((i * 29) % 97) / 96.0;
    out << "H" << i << ',' << wildfire::format_iso8601(start) << ','
        << wildfire::io::format_double(gt.lat_min + fy * (gt.lat_max - gt.lat_min)) << ','
        << wildfire::io::format_double(gt.lon_min + fx * (gt.lon_max - gt.lon_min)) << ','
        << wildfire::format_iso8601(end) << ',' << wildfire::io::format_double(acres) << '\n';
  }
}

}  // namespace fixtures
