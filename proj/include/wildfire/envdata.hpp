#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wildfire/geometry.hpp"

namespace wildfire {

using TimePoint = std::chrono::sys_seconds;

/// Parses "YYYY-MM-DDTHH:MM[:SS][Z]" (a space may replace the T). UTC only.
TimePoint parse_iso8601(std::string_view text);
std::string format_iso8601(TimePoint t);

struct EnvSample {
  double u10 = 0.0;    // eastward wind, m/s
  double v10 = 0.0;    // northward wind, m/s
  double swvl1 = 0.0;  // volumetric soil water, fraction
};

/// Hourly wind and soil-wetness rasters over a planar rectangle. Rasters are
/// stored row-major [t][y][x]; cell (0, 0) has its lower-left corner at origin.
/// Immutable once constructed.
class EnvGrid {
 public:
  EnvGrid(int nx, int ny, int nt, double spacing_km, Point2 origin, std::vector<float> u10,
          std::vector<float> v10, std::vector<float> swvl1,
          TimePoint start = default_start());

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nt() const { return nt_; }
  double spacing_km() const { return spacing_; }
  Point2 origin() const { return origin_; }
  TimePoint start() const { return start_; }
  Rect extent() const { return {origin_.x, origin_.y, nx_ * spacing_, ny_ * spacing_}; }

  const std::vector<float>& u10() const { return u10_; }
  const std::vector<float>& v10() const { return v10_; }
  const std::vector<float>& swvl1() const { return swvl1_; }

  std::size_t index(int t, int iy, int ix) const {
    return (static_cast<std::size_t>(t) * ny_ + iy) * nx_ + ix;
  }

  /// Cell containing xy. A point on an edge shared by two cells belongs to the
  /// lower-index cell. Throws ValidationError outside the extent.
  std::pair<int, int> cell_of(Point2 xy) const;

  /// Nearest-cell lookup, no interpolation. Throws outside the extent or time range.
  EnvSample sample(Point2 xy, int t) const;

  /// Same lookup, but positions beyond the extent use the nearest edge cell.
  EnvSample sample_clamped(Point2 xy, int t) const;

  static TimePoint default_start();

 private:
  int clamp_index(double offset, int n) const;

  int nx_, ny_, nt_;
  double spacing_;
  Point2 origin_;
  TimePoint start_;
  std::vector<float> u10_, v10_, swvl1_;
};

inline EnvSample sample_env(const EnvGrid& grid, Point2 xy, int t) { return grid.sample(xy, t); }

/// Static above-ground live biomass raster (Mg/ha), row-major [y][x].
class BiomassGrid {
 public:
  BiomassGrid(int nx, int ny, double spacing_km, Point2 origin, std::vector<float> values);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double spacing_km() const { return spacing_; }
  Point2 origin() const { return origin_; }
  Rect extent() const { return {origin_.x, origin_.y, nx_ * spacing_, ny_ * spacing_}; }
  const std::vector<float>& values() const { return values_; }
  float at(int iy, int ix) const { return values_[static_cast<std::size_t>(iy) * nx_ + ix]; }
  Point2 cell_center(int iy, int ix) const {
    return {origin_.x + (ix + 0.5) * spacing_, origin_.y + (iy + 0.5) * spacing_};
  }
  /// Mean over every cell of the raster.
  double mean() const;

 private:
  int nx_, ny_;
  double spacing_;
  Point2 origin_;
  std::vector<float> values_;
};

/// Throws ValidationError unless the biomass raster covers the env extent to
/// within one env cell on each axis.
void check_coverage(const BiomassGrid& bio, const EnvGrid& env);

/// Equirectangular map between a lat/lon box and a planar rectangle anchored at (0, 0).
struct GeoTransform {
  // Defaults: the California box (32°32'N–42°N, 124°26'W–114°8'W) on 1000 x 1100 km.
  double lat_min = 32.0 + 32.0 / 60.0;
  double lat_max = 42.0;
  double lon_min = -(124.0 + 26.0 / 60.0);
  double lon_max = -(114.0 + 8.0 / 60.0);
  double width_km = 1000.0;
  double height_km = 1100.0;

  void validate() const;
  Rect rect() const { return {0.0, 0.0, width_km, height_km}; }
};

Point2 geo_to_planar(const GeoTransform& gt, double lat_deg, double lon_deg);

struct Incident {
  std::string id;
  int start_hour = 0;
  Point2 ignition;
  std::optional<double> historical_burn_hours;
  std::optional<double> historical_area_km2;
};

inline constexpr double kKm2PerAcre = 0.00404686;

/// Reads the incident CSV (id,start_iso8601,lat_deg,lon_deg[,contained_iso8601,area_acre]).
/// Start times floor to the hour of the grid's time axis.
std::vector<Incident> load_incidents(const std::filesystem::path& path, const GeoTransform& gt,
                                     const EnvGrid& grid);

/// Throws ValidationError if the incident does not fit the grid.
void validate_incident(const Incident& incident, const EnvGrid& grid);

EnvGrid load_env_grid(const std::filesystem::path& manifest_path);
BiomassGrid load_biomass_grid(const std::filesystem::path& manifest_path);

/// Writes `<stem>.json` plus `<stem>_{u10,v10,swvl1}.f32` into dir; returns the manifest path.
std::filesystem::path save_env_grid(const EnvGrid& grid, const std::filesystem::path& dir,
                                    const std::string& stem);
std::filesystem::path save_biomass_grid(const BiomassGrid& grid, const std::filesystem::path& dir,
                                        const std::string& stem);

struct WindPhase {
  int start_hour = 0;
  double u10 = 0.0;
  double v10 = 0.0;
  double swvl1 = 0.0;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// Descriptor for a synthetic environment. `kind` selects which fields apply:
///   constant  – u10/v10/swvl1 everywhere
///   schedule  – piecewise-constant in time, uniform in space
///   random    – smooth value-noise fields drawn from the given ranges
struct SynthSpec {
  enum class Kind { Constant, Schedule, Random };

  int nx = 1, ny = 1, nt = 1;
  double spacing_km = 10.0;
  Point2 origin;
  TimePoint start = EnvGrid::default_start();
  Kind kind = Kind::Constant;

  double u10 = 0.0, v10 = 0.0, swvl1 = 0.0;
  std::vector<WindPhase> schedule;
  Range u10_range, v10_range, swvl1_range;
  double correlation_km = 100.0;
  double correlation_hours = 24.0;

  void validate() const;
  static SynthSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

EnvGrid synth_env(const SynthSpec& spec, std::uint64_t seed);

struct BiomassSynthSpec {
  int nx = 1, ny = 1;
  double spacing_km = 1.0;
  Point2 origin;
  Range range{40.0, 40.0};
  double correlation_km = 50.0;

  void validate() const;
  static BiomassSynthSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

BiomassGrid synth_biomass(const BiomassSynthSpec& spec, std::uint64_t seed);

struct IncidentSynthSpec {
  int count = 50;
  int start_hour_max = 0;  // ignitions drawn from [0, start_hour_max)
  Range burn_hours{24.0, 96.0};
  Range area_km2{1.0, 100.0};
  Range lat_fraction{0.05, 0.95};  // portion of the geo box used for ignitions
  Range lon_fraction{0.05, 0.95};

  static IncidentSynthSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Writes a CSV in the incident format, with timestamps relative to `start`.
void write_synth_incidents(const std::filesystem::path& path, const IncidentSynthSpec& spec,
                           const GeoTransform& gt, TimePoint start, std::uint64_t seed);

}  // namespace wildfire
