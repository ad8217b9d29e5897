#include "wildfire/sensors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "wildfire/error.hpp"
#include "wildfire/io.hpp"
#include "wildfire/rng.hpp"

namespace wildfire {

SensorField deploy_uniform(std::size_t count, const Rect& region, std::uint64_t seed) {
  if (!(region.width > 0.0) || !(region.height > 0.0)) {
    throw ValidationError("sensor region extents must be > 0");
  }
  const CounterRng rng(seed);
  SensorField field;
  field.seed = seed;
  field.region = region;
  field.positions.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    field.positions[i] = {region.x0 + region.width * rng.uniform(2 * i),
                          region.y0 + region.height * rng.uniform(2 * i + 1)};
  }
  return field;
}

SensorField load_sensors(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open sensor file " + path.string());
  SensorField field;
  std::optional<Rect> declared;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto where = path.string() + ":" + std::to_string(lineno) + ": ";
    if (line.front() == '#') {
      std::istringstream ss(line.substr(1));
      std::string word;
      Rect r;
      if (ss >> word && word == "region") {
        if (!(ss >> r.x0 >> r.y0 >> r.width >> r.height) || !(r.width > 0) || !(r.height > 0)) {
          throw ValidationError(where + "bad region declaration");
        }
        declared = r;
      }
      continue;
    }
    auto fields = io::split_csv_line(line);
    if (!header_seen) {
      if (fields.size() != 2 || fields[0] != "x_km" || fields[1] != "y_km") {
        throw ValidationError(where + "expected header x_km,y_km");
      }
      header_seen = true;
      continue;
    }
    Point2 p;
    if (fields.size() != 2 || !io::parse_double(fields[0], p.x) || !io::parse_double(fields[1], p.y) ||
        !std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw ValidationError(where + "unparsable sensor row");
    }
    if (declared && !declared->contains(p)) throw ValidationError(where + "sensor outside declared region");
    field.positions.push_back(p);
  }
  if (field.positions.empty()) throw ValidationError(path.string() + ": no sensors");
  if (declared) {
    field.region = *declared;
  } else {
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
    for (auto p : field.positions) {
      x0 = std::min(x0, p.x);
      y0 = std::min(y0, p.y);
      x1 = std::max(x1, p.x);
      y1 = std::max(y1, p.y);
    }
    field.region = {x0, y0, x1 - x0, y1 - y0};
  }
  return field;
}

void save_sensors(const SensorField& field, const std::filesystem::path& path) {
  std::string out;
  out.reserve(field.positions.size() * 40 + 64);
  const auto& r = field.region;
  out += "# region " + io::format_double(r.x0) + " " + io::format_double(r.y0) + " " +
         io::format_double(r.width) + " " + io::format_double(r.height) + "\n";
  out += "x_km,y_km\n";
  for (auto p : field.positions) {
    out += io::format_double(p.x);
    out += ',';
    out += io::format_double(p.y);
    out += '\n';
  }
  io::write_file_atomic(path, out);
}

SensorIndex::SensorIndex(const SensorField& field, double cell_km) : points_(field.positions) {
  if (points_.empty()) return;
  if (points_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw ValidationError("too many sensors for the index");
  }
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
  for (auto p : points_) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  bounds_ = {x0, y0, x1 - x0, y1 - y0};
  if (!(cell_km > 0.0)) {
    const double area = std::max(bounds_.area(), 1e-12);
    cell_km = std::sqrt(area / static_cast<double>(points_.size()));
  }
  // keep the bucket table bounded (at most ~4M buckets)
  const double min_cell = std::sqrt(std::max(bounds_.area(), 1e-12) / 4.0e6);
  cell_ = std::max({cell_km, min_cell, 1e-9});
  nx_ = static_cast<int>(bounds_.width / cell_) + 1;
  ny_ = static_cast<int>(bounds_.height / cell_) + 1;

  std::vector<std::uint32_t> bucket(points_.size());
  offsets_.assign(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    int ix = std::min(nx_ - 1, static_cast<int>((points_[i].x - x0) / cell_));
    int iy = std::min(ny_ - 1, static_cast<int>((points_[i].y - y0) / cell_));
    bucket[i] = static_cast<std::uint32_t>(iy * nx_ + ix);
    ++offsets_[bucket[i] + 1];
  }
  for (std::size_t b = 1; b < offsets_.size(); ++b) offsets_[b] += offsets_[b - 1];
  ids_.resize(points_.size());
  auto fill = offsets_;
  // ascending id order inside every bucket
  for (std::size_t i = 0; i < points_.size(); ++i) ids_[fill[bucket[i]]++] = static_cast<std::uint32_t>(i);
}

std::optional<std::size_t> SensorIndex::lowest_within(Point2 center, double radius_km) const {
  if (points_.empty() || !(radius_km >= 0.0)) return std::nullopt;
  auto lo = [&](double v, double origin, int n) {
    return std::clamp(static_cast<long long>(std::floor((v - origin) / cell_)), 0LL, static_cast<long long>(n - 1));
  };
  if (center.x + radius_km < bounds_.x0 || center.x - radius_km > bounds_.x1() ||
      center.y + radius_km < bounds_.y0 || center.y - radius_km > bounds_.y1()) {
    return std::nullopt;
  }
  const auto ix0 = lo(center.x - radius_km, bounds_.x0, nx_), ix1 = lo(center.x + radius_km, bounds_.x0, nx_);
  const auto iy0 = lo(center.y - radius_km, bounds_.y0, ny_), iy1 = lo(center.y + radius_km, bounds_.y0, ny_);
  std::optional<std::size_t> best;
  for (auto iy = iy0; iy <= iy1; ++iy) {
    for (auto ix = ix0; ix <= ix1; ++ix) {
      const auto b = static_cast<std::size_t>(iy * nx_ + ix);
      for (auto k = offsets_[b]; k < offsets_[b + 1]; ++k) {
        const auto id = ids_[k];
        if (best && id >= *best) break;
        if (distance(points_[id], center) <= radius_km) {
          best = id;
          break;
        }
      }
    }
  }
  return best;
}

}  // namespace wildfire
