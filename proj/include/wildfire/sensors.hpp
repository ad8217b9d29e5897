#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "wildfire/geometry.hpp"

namespace wildfire {

/// Immutable sensor deployment.
struct SensorField {
  std::vector<Point2> positions;
  std::uint64_t seed = 0;
  Rect region;

  std::size_t size() const { return positions.size(); }
  double density_per_km2() const { return region.area() > 0 ? positions.size() / region.area() : 0.0; }
};

/// `count` i.i.d. uniform points over `region` drawn from CounterRng(seed):
/// point i uses draws 2i (x) and 2i+1 (y), so any prefix is reproducible on its own.
SensorField deploy_uniform(std::size_t count, const Rect& region, std::uint64_t seed);

/// CSV with header x_km,y_km. An optional leading comment line
/// `# region x0 y0 width height` declares the region; otherwise it is the
/// bounding rectangle of the points.
SensorField load_sensors(const std::filesystem::path& path);
void save_sensors(const SensorField& field, const std::filesystem::path& path);

/// Uniform bucket grid over the sensor region for disk queries.
class SensorIndex {
 public:
  SensorIndex() = default;
  /// Bucket size defaults to the mean inter-sensor spacing.
  explicit SensorIndex(const SensorField& field, double cell_km = 0.0);

  /// Lowest sensor index with distance(sensor, center) <= radius, if any.
  std::optional<std::size_t> lowest_within(Point2 center, double radius_km) const;

  std::size_t size() const { return points_.size(); }
  double cell_km() const { return cell_; }

 private:
  std::vector<Point2> points_;
  Rect bounds_;
  double cell_ = 1.0;
  int nx_ = 0, ny_ = 0;
  std::vector<std::uint32_t> offsets_;  // CSR: bucket b holds ids_[offsets_[b] .. offsets_[b+1])
  std::vector<std::uint32_t> ids_;
};

}  // namespace wildfire
