#include "wildfire/envdata.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "wildfire/error.hpp"
#include "wildfire/io.hpp"
#include "wildfire/rng.hpp"

namespace wildfire {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// time

TimePoint parse_iso8601(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
  if (!s.empty() && s.back() == 'Z') s.pop_back();
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  char sep = 0;
  int consumed = 0;
  int n = std::sscanf(s.c_str(), "%4d-%2d-%2d%c%2d:%2d%n", &y, &mo, &d, &sep, &h, &mi, &consumed);
  if (n != 6 || (sep != 'T' && sep != ' ')) {
    throw ValidationError("bad timestamp '" + std::string(text) + "'");
  }
  std::string rest = s.substr(static_cast<std::size_t>(consumed));
  if (!rest.empty()) {
    int used = 0;
    if (std::sscanf(rest.c_str(), ":%2d%n", &sec, &used) != 1 ||
        static_cast<std::size_t>(used) != rest.size()) {
      throw ValidationError("bad timestamp '" + std::string(text) + "'");
    }
  }
  using namespace std::chrono;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 59 || h < 0 || mi < 0 || sec < 0) {
    throw ValidationError("bad timestamp '" + std::string(text) + "'");
  }
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
}

std::string format_iso8601(TimePoint t) {
  using namespace std::chrono;
  auto day_point = floor<days>(t);
  year_month_day ymd{day_point};
  hh_mm_ss hms{t - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

// ---------------------------------------------------------------------------
// EnvGrid

TimePoint EnvGrid::default_start() {
  using namespace std::chrono;
  return sys_days{year{2020} / January / 1};
}

EnvGrid::EnvGrid(int nx, int ny, int nt, double spacing_km, Point2 origin, std::vector<float> u10,
                 std::vector<float> v10, std::vector<float> swvl1, TimePoint start)
    : nx_(nx),
      ny_(ny),
      nt_(nt),
      spacing_(spacing_km),
      origin_(origin),
      start_(start),
      u10_(std::move(u10)),
      v10_(std::move(v10)),
      swvl1_(std::move(swvl1)) {
  if (nx < 1 || ny < 1 || nt < 1) throw ValidationError("env grid: nx, ny, nt must be >= 1");
  if (!(spacing_km > 0.0) || !std::isfinite(spacing_km)) {
    throw ValidationError("env grid: spacing_km must be > 0");
  }
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) {
    throw ValidationError("env grid: origin must be finite");
  }
  const auto expected = static_cast<std::size_t>(nx) * ny * nt;
  auto check = [&](const std::vector<float>& r, const char* name) {
    if (r.size() != expected) {
      throw ValidationError(std::string("env grid: ") + name + " has " + std::to_string(r.size()) +
                            " values, expected " + std::to_string(expected));
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (!std::isfinite(r[i])) {
        throw ValidationError(std::string("env grid: non-finite ") + name + " at index " +
                              std::to_string(i));
      }
    }
  };
  check(u10_, "u10");
  check(v10_, "v10");
  check(swvl1_, "swvl1");
  for (std::size_t i = 0; i < swvl1_.size(); ++i) {
    if (swvl1_[i] < 0.0f || swvl1_[i] > 1.0f) {
      throw ValidationError("env grid: swvl1 value " + std::to_string(swvl1_[i]) +
                            " outside [0, 1] at index " + std::to_string(i));
    }
  }
}

int EnvGrid::clamp_index(double offset, int n) const {
  // Edge between cells i-1 and i belongs to i-1: index = ceil(offset / spacing) - 1.
  double q = std::ceil(offset / spacing_) - 1.0;
  if (q < 0.0) return 0;
  if (q > n - 1) return n - 1;
  return static_cast<int>(q);
}

std::pair<int, int> EnvGrid::cell_of(Point2 xy) const {
  if (!extent().contains(xy)) {
    throw ValidationError("position (" + std::to_string(xy.x) + ", " + std::to_string(xy.y) +
                          ") km is outside the env grid");
  }
  return {clamp_index(xy.x - origin_.x, nx_), clamp_index(xy.y - origin_.y, ny_)};
}

EnvSample EnvGrid::sample(Point2 xy, int t) const {
  if (t < 0 || t >= nt_) {
    throw ValidationError("hour " + std::to_string(t) + " outside env grid time range [0, " +
                          std::to_string(nt_) + ")");
  }
  auto [ix, iy] = cell_of(xy);
  auto i = index(t, iy, ix);
  return {u10_[i], v10_[i], swvl1_[i]};
}

EnvSample EnvGrid::sample_clamped(Point2 xy, int t) const {
  if (t < 0 || t >= nt_) {
    throw ValidationError("hour " + std::to_string(t) + " outside env grid time range [0, " +
                          std::to_string(nt_) + ")");
  }
  if (!std::isfinite(xy.x) || !std::isfinite(xy.y)) throw ValidationError("non-finite position");
  int ix = clamp_index(xy.x - origin_.x, nx_);
  int iy = clamp_index(xy.y - origin_.y, ny_);
  auto i = index(t, iy, ix);
  return {u10_[i], v10_[i], swvl1_[i]};
}

// ---------------------------------------------------------------------------
// BiomassGrid

BiomassGrid::BiomassGrid(int nx, int ny, double spacing_km, Point2 origin, std::vector<float> values)
    : nx_(nx), ny_(ny), spacing_(spacing_km), origin_(origin), values_(std::move(values)) {
  if (nx < 1 || ny < 1) throw ValidationError("biomass grid: nx, ny must be >= 1");
  if (!(spacing_km > 0.0) || !std::isfinite(spacing_km)) {
    throw ValidationError("biomass grid: spacing_km must be > 0");
  }
  if (values_.size() != static_cast<std::size_t>(nx) * ny) {
    throw ValidationError("biomass grid: has " + std::to_string(values_.size()) +
                          " values, expected " + std::to_string(static_cast<std::size_t>(nx) * ny));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0f) {
      throw ValidationError("biomass grid: invalid value " + std::to_string(values_[i]) +
                            " at index " + std::to_string(i));
    }
  }
}

double BiomassGrid::mean() const {
  double sum = 0.0;
  for (float v : values_) sum += v;
  return sum / static_cast<double>(values_.size());
}

void check_coverage(const BiomassGrid& bio, const EnvGrid& env) {
  const Rect b = bio.extent();
  const Rect e = env.extent();
  const double tol = env.spacing_km();
  if (std::abs(b.x0 - e.x0) > tol || std::abs(b.y0 - e.y0) > tol || std::abs(b.x1() - e.x1()) > tol ||
      std::abs(b.y1() - e.y1()) > tol) {
    throw ValidationError("biomass grid does not cover the env grid rectangle (within one cell)");
  }
}

// ---------------------------------------------------------------------------
// geo

void GeoTransform::validate() const {
  if (!(lat_min < lat_max) || !(lon_min < lon_max)) {
    throw ValidationError("geo transform: require lat_min < lat_max and lon_min < lon_max");
  }
  if (!(width_km > 0.0) || !(height_km > 0.0)) {
    throw ValidationError("geo transform: extents must be > 0");
  }
}

Point2 geo_to_planar(const GeoTransform& gt, double lat_deg, double lon_deg) {
  gt.validate();
  if (!(lat_deg >= gt.lat_min && lat_deg <= gt.lat_max)) {
    throw ValidationError("latitude " + std::to_string(lat_deg) + " outside [" +
                          std::to_string(gt.lat_min) + ", " + std::to_string(gt.lat_max) + "]");
  }
  if (!(lon_deg >= gt.lon_min && lon_deg <= gt.lon_max)) {
    throw ValidationError("longitude " + std::to_string(lon_deg) + " outside [" +
                          std::to_string(gt.lon_min) + ", " + std::to_string(gt.lon_max) + "]");
  }
  return {(lon_deg - gt.lon_min) / (gt.lon_max - gt.lon_min) * gt.width_km,
          (lat_deg - gt.lat_min) / (gt.lat_max - gt.lat_min) * gt.height_km};
}

// ---------------------------------------------------------------------------
// incidents

void validate_incident(const Incident& inc, const EnvGrid& grid) {
  if (inc.start_hour < 0 || inc.start_hour >= grid.nt()) {
    throw ValidationError("incident " + inc.id + ": start hour " + std::to_string(inc.start_hour) +
                          " outside the env grid time range");
  }
  if (!grid.extent().contains(inc.ignition)) {
    throw ValidationError("incident " + inc.id + ": ignition outside the env grid");
  }
  if (inc.historical_burn_hours && !(*inc.historical_burn_hours >= 0.0)) {
    throw ValidationError("incident " + inc.id + ": negative historical burn hours");
  }
  if (inc.historical_area_km2 && !(*inc.historical_area_km2 >= 0.0)) {
    throw ValidationError("incident " + inc.id + ": negative historical area");
  }
}

std::vector<Incident> load_incidents(const fs::path& path, const GeoTransform& gt,
                                     const EnvGrid& grid) {
  auto table = io::read_csv(path);
  const std::vector<std::string> required{"id", "start_iso8601", "lat_deg", "lon_deg"};
  auto col = [&](const std::string& name) -> int {
    auto it = std::find(table.header.begin(), table.header.end(), name);
    return it == table.header.end() ? -1 : static_cast<int>(it - table.header.begin());
  };
  for (const auto& name : required) {
    if (col(name) < 0) throw ValidationError(path.string() + ": missing column '" + name + "'");
  }
  const int c_id = col("id"), c_start = col("start_iso8601"), c_lat = col("lat_deg"),
            c_lon = col("lon_deg"), c_end = col("contained_iso8601"), c_area = col("area_acre");

  std::vector<Incident> out;
  out.reserve(table.rows.size());
  for (const auto& [lineno, row] : table.rows) {
    auto where = path.string() + ":" + std::to_string(lineno) + ": ";
    try {
      if (row.size() < table.header.size() && row.size() < 4) {
        throw ValidationError("too few fields");
      }
      auto field = [&](int c) -> std::string {
        return (c >= 0 && static_cast<std::size_t>(c) < row.size()) ? row[c] : std::string{};
      };
      Incident inc;
      inc.id = field(c_id);
      if (inc.id.empty()) throw ValidationError("empty id");
      TimePoint start = parse_iso8601(field(c_start));
      double lat = 0.0, lon = 0.0;
      if (!io::parse_double(field(c_lat), lat)) throw ValidationError("bad lat_deg");
      if (!io::parse_double(field(c_lon), lon)) throw ValidationError("bad lon_deg");
      inc.ignition = geo_to_planar(gt, lat, lon);
      auto since = start - grid.start();
      auto hours = std::chrono::floor<std::chrono::hours>(since).count();
      if (since.count() < 0 || hours >= grid.nt()) {
        throw ValidationError("start time outside the env grid time range");
      }
      inc.start_hour = static_cast<int>(hours);
      if (auto end_text = field(c_end); !end_text.empty()) {
        TimePoint end = parse_iso8601(end_text);
        inc.historical_burn_hours = static_cast<double>((end - start).count()) / 3600.0;
      }
      if (auto area_text = field(c_area); !area_text.empty()) {
        double acres = 0.0;
        if (!io::parse_double(area_text, acres)) throw ValidationError("bad area_acre");
        inc.historical_area_km2 = acres * kKm2PerAcre;
      }
      validate_incident(inc, grid);
      out.push_back(std::move(inc));
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// manifests

namespace {

std::vector<float> read_raster(const fs::path& path, std::size_t count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open raster " + path.string());
  in.seekg(0, std::ios::end);
  auto bytes = static_cast<std::size_t>(in.tellg());
  if (bytes != count * sizeof(float)) {
    throw ValidationError("raster " + path.string() + " has " + std::to_string(bytes) +
                          " bytes, expected " + std::to_string(count * sizeof(float)));
  }
  in.seekg(0);
  std::vector<float> data(count);
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(bytes));
  if constexpr (std::endian::native == std::endian::big) {
    for (auto& v : data) {
      std::uint32_t u;
      std::memcpy(&u, &v, 4);
      u = __builtin_bswap32(u);
      std::memcpy(&v, &u, 4);
    }
  }
  return data;
}

void write_raster(const fs::path& path, const std::vector<float>& data) {
  std::string bytes(data.size() * sizeof(float), '\0');
  std::memcpy(bytes.data(), data.data(), bytes.size());
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < bytes.size(); i += 4) std::reverse(bytes.begin() + i, bytes.begin() + i + 4);
  }
  io::write_file_atomic(path, bytes);
}

json read_json(const fs::path& path) {
  auto text = io::read_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

template <typename T>
T get_field(const json& j, const char* key, const fs::path& path) {
  if (!j.contains(key)) throw ValidationError(path.string() + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(path.string() + ": bad field '" + key + "'");
  }
}

Point2 read_origin(const json& j) {
  if (!j.contains("origin")) return {};
  const auto& o = j.at("origin");
  if (o.is_array() && o.size() == 2) return {o[0].get<double>(), o[1].get<double>()};
  if (o.is_object()) return {o.value("x", 0.0), o.value("y", 0.0)};
  throw ValidationError("origin must be [x, y] or {x, y}");
}

}  // namespace

EnvGrid load_env_grid(const fs::path& manifest_path) {
  auto j = read_json(manifest_path);
  const auto base = manifest_path.parent_path();
  try {
    int nx = get_field<int>(j, "nx", manifest_path);
    int ny = get_field<int>(j, "ny", manifest_path);
    int nt = get_field<int>(j, "nt", manifest_path);
    double spacing = get_field<double>(j, "spacing_km", manifest_path);
    if (nx < 1 || ny < 1 || nt < 1) throw ValidationError("nx, ny, nt must be >= 1");
    if (!j.contains("files") || !j["files"].is_object()) throw ValidationError("missing field 'files'");
    const auto& files = j["files"];
    auto count = static_cast<std::size_t>(nx) * ny * nt;
    auto load = [&](const char* key) {
      auto rel = get_field<std::string>(files, key, manifest_path);
      return read_raster(base / rel, count);
    };
    auto u10 = load("u10");
    auto v10 = load("v10");
    auto swvl1 = load("swvl1");
    TimePoint start = EnvGrid::default_start();
    if (j.contains("start_iso8601")) start = parse_iso8601(j["start_iso8601"].get<std::string>());
    return EnvGrid(nx, ny, nt, spacing, read_origin(j), std::move(u10), std::move(v10),
                   std::move(swvl1), start);
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    if (msg.find(manifest_path.string()) == std::string::npos) msg = manifest_path.string() + ": " + msg;
    throw ValidationError(msg);
  }
}

BiomassGrid load_biomass_grid(const fs::path& manifest_path) {
  auto j = read_json(manifest_path);
  try {
    int nx = get_field<int>(j, "nx", manifest_path);
    int ny = get_field<int>(j, "ny", manifest_path);
    double spacing = get_field<double>(j, "spacing_km", manifest_path);
    if (nx < 1 || ny < 1) throw ValidationError("nx, ny must be >= 1");
    auto rel = get_field<std::string>(j, "file", manifest_path);
    auto values = read_raster(manifest_path.parent_path() / rel, static_cast<std::size_t>(nx) * ny);
    return BiomassGrid(nx, ny, spacing, read_origin(j), std::move(values));
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    if (msg.find(manifest_path.string()) == std::string::npos) msg = manifest_path.string() + ": " + msg;
    throw ValidationError(msg);
  }
}

fs::path save_env_grid(const EnvGrid& grid, const fs::path& dir, const std::string& stem) {
  fs::create_directories(dir);
  json j;
  j["nx"] = grid.nx();
  j["ny"] = grid.ny();
  j["nt"] = grid.nt();
  j["spacing_km"] = grid.spacing_km();
  j["origin"] = {grid.origin().x, grid.origin().y};
  j["start_iso8601"] = format_iso8601(grid.start());
  j["files"] = {{"u10", stem + "_u10.f32"}, {"v10", stem + "_v10.f32"}, {"swvl1", stem + "_swvl1.f32"}};
  write_raster(dir / (stem + "_u10.f32"), grid.u10());
  write_raster(dir / (stem + "_v10.f32"), grid.v10());
  write_raster(dir / (stem + "_swvl1.f32"), grid.swvl1());
  auto manifest = dir / (stem + ".json");
  io::write_file_atomic(manifest, j.dump(2) + "\n");
  return manifest;
}

fs::path save_biomass_grid(const BiomassGrid& grid, const fs::path& dir, const std::string& stem) {
  fs::create_directories(dir);
  json j;
  j["nx"] = grid.nx();
  j["ny"] = grid.ny();
  j["spacing_km"] = grid.spacing_km();
  j["origin"] = {grid.origin().x, grid.origin().y};
  j["file"] = stem + ".f32";
  write_raster(dir / (stem + ".f32"), grid.values());
  auto manifest = dir / (stem + ".json");
  io::write_file_atomic(manifest, j.dump(2) + "\n");
  return manifest;
}

// ---------------------------------------------------------------------------
// synthetic fields

namespace {

double smoothstep(double f) { return f * f * (3.0 - 2.0 * f); }

// Value noise: uniform draws on a coarse lattice, blended with smoothstep
// weights. Every output is a convex combination of lattice draws, so it stays
// inside the range.
class ValueNoise {
 public:
  ValueNoise(CounterRng rng, Range range) : rng_(rng), range_(range) {}

  double lattice(long long i, long long j, long long k) const {
    auto key = (static_cast<std::uint64_t>(k) << 42) ^ (static_cast<std::uint64_t>(j) << 21) ^
               static_cast<std::uint64_t>(i);
    return range_.lo + (range_.hi - range_.lo) * rng_.uniform(key);
  }

  // coordinates in lattice units
  double at(double x, double y, double t) const {
    long long i = static_cast<long long>(std::floor(x));
    long long j = static_cast<long long>(std::floor(y));
    long long k = static_cast<long long>(std::floor(t));
    double fx = smoothstep(x - i), fy = smoothstep(y - j), ft = smoothstep(t - k);
    double acc = 0.0;
    for (int dk = 0; dk < 2; ++dk) {
      for (int dj = 0; dj < 2; ++dj) {
        for (int di = 0; di < 2; ++di) {
          double w = (di ? fx : 1.0 - fx) * (dj ? fy : 1.0 - fy) * (dk ? ft : 1.0 - ft);
          if (w != 0.0) acc += w * lattice(i + di, j + dj, k + dk);
        }
      }
    }
    return std::clamp(acc, range_.lo, range_.hi);
  }

 private:
  CounterRng rng_;
  Range range_;
};

void check_range(const Range& r, const char* name, double lo, double hi) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi || r.lo < lo || r.hi > hi) {
    throw ValidationError(std::string("synthetic spec: invalid ") + name + " range");
  }
}

Range read_range(const json& j, const char* key, Range fallback) {
  if (!j.contains(key)) return fallback;
  const auto& a = j.at(key);
  if (!a.is_array() || a.size() != 2) {
    throw ValidationError(std::string("synthetic spec: ") + key + " must be [lo, hi]");
  }
  return {a[0].get<double>(), a[1].get<double>()};
}

}  // namespace

void SynthSpec::validate() const {
  if (nx < 1 || ny < 1 || nt < 1) throw ValidationError("synthetic spec: nx, ny, nt must be >= 1");
  if (!(spacing_km > 0.0)) throw ValidationError("synthetic spec: spacing_km must be > 0");
  const double inf = std::numeric_limits<double>::infinity();
  switch (kind) {
    case Kind::Constant:
      if (!std::isfinite(u10) || !std::isfinite(v10)) throw ValidationError("synthetic spec: non-finite wind");
      if (!(swvl1 >= 0.0 && swvl1 <= 1.0)) throw ValidationError("synthetic spec: swvl1 outside [0, 1]");
      break;
    case Kind::Schedule: {
      if (schedule.empty() || schedule.front().start_hour != 0) {
        throw ValidationError("synthetic spec: schedule must start at hour 0");
      }
      for (std::size_t i = 0; i < schedule.size(); ++i) {
        const auto& p = schedule[i];
        if (i > 0 && p.start_hour <= schedule[i - 1].start_hour) {
          throw ValidationError("synthetic spec: schedule hours must be strictly increasing");
        }
        if (!std::isfinite(p.u10) || !std::isfinite(p.v10)) throw ValidationError("synthetic spec: non-finite wind");
        if (!(p.swvl1 >= 0.0 && p.swvl1 <= 1.0)) throw ValidationError("synthetic spec: swvl1 outside [0, 1]");
      }
      break;
    }
    case Kind::Random:
      check_range(u10_range, "u10", -inf, inf);
      check_range(v10_range, "v10", -inf, inf);
      check_range(swvl1_range, "swvl1", 0.0, 1.0);
      if (!(correlation_km > 0.0) || !(correlation_hours > 0.0)) {
        throw ValidationError("synthetic spec: correlation lengths must be > 0");
      }
      break;
  }
}

SynthSpec SynthSpec::from_json(const json& j) {
  SynthSpec s;
  try {
    s.nx = j.at("nx").get<int>();
    s.ny = j.at("ny").get<int>();
    s.nt = j.at("nt").get<int>();
    s.spacing_km = j.at("spacing_km").get<double>();
    s.origin = read_origin(j);
    if (j.contains("start_iso8601")) s.start = parse_iso8601(j["start_iso8601"].get<std::string>());
    auto kind = j.value("kind", std::string("constant"));
    if (kind == "constant") {
      s.kind = Kind::Constant;
      s.u10 = j.value("u10", 0.0);
      s.v10 = j.value("v10", 0.0);
      s.swvl1 = j.value("swvl1", 0.0);
    } else if (kind == "schedule") {
      s.kind = Kind::Schedule;
      for (const auto& p : j.at("schedule")) {
        s.schedule.push_back({p.at("start_hour").get<int>(), p.value("u10", 0.0), p.value("v10", 0.0),
                              p.value("swvl1", 0.0)});
      }
    } else if (kind == "random") {
      s.kind = Kind::Random;
      s.u10_range = read_range(j, "u10_range", {});
      s.v10_range = read_range(j, "v10_range", {});
      s.swvl1_range = read_range(j, "swvl1_range", {});
      s.correlation_km = j.value("correlation_km", s.correlation_km);
      s.correlation_hours = j.value("correlation_hours", s.correlation_hours);
    } else {
      throw ValidationError("synthetic spec: unknown kind '" + kind + "'");
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("synthetic spec: ") + e.what());
  }
  s.validate();
  return s;
}

json SynthSpec::to_json() const {
  json j{{"nx", nx}, {"ny", ny}, {"nt", nt}, {"spacing_km", spacing_km},
         {"origin", {origin.x, origin.y}}, {"start_iso8601", format_iso8601(start)}};
  switch (kind) {
    case Kind::Constant:
      j["kind"] = "constant";
      j["u10"] = u10;
      j["v10"] = v10;
      j["swvl1"] = swvl1;
      break;
    case Kind::Schedule:
      j["kind"] = "schedule";
      j["schedule"] = json::array();
      for (const auto& p : schedule) {
        j["schedule"].push_back({{"start_hour", p.start_hour}, {"u10", p.u10}, {"v10", p.v10}, {"swvl1", p.swvl1}});
      }
      break;
    case Kind::Random:
      j["kind"] = "random";
      j["u10_range"] = {u10_range.lo, u10_range.hi};
      j["v10_range"] = {v10_range.lo, v10_range.hi};
      j["swvl1_range"] = {swvl1_range.lo, swvl1_range.hi};
      j["correlation_km"] = correlation_km;
      j["correlation_hours"] = correlation_hours;
      break;
  }
  return j;
}

EnvGrid synth_env(const SynthSpec& spec, std::uint64_t seed) {
  spec.validate();
  const auto count = static_cast<std::size_t>(spec.nx) * spec.ny * spec.nt;
  std::vector<float> u(count), v(count), w(count);
  const std::size_t plane = static_cast<std::size_t>(spec.nx) * spec.ny;

  switch (spec.kind) {
    case SynthSpec::Kind::Constant:
      std::fill(u.begin(), u.end(), static_cast<float>(spec.u10));
      std::fill(v.begin(), v.end(), static_cast<float>(spec.v10));
      std::fill(w.begin(), w.end(), static_cast<float>(spec.swvl1));
      break;
    case SynthSpec::Kind::Schedule: {
      std::size_t phase = 0;
      for (int t = 0; t < spec.nt; ++t) {
        while (phase + 1 < spec.schedule.size() && spec.schedule[phase + 1].start_hour <= t) ++phase;
        const auto& p = spec.schedule[phase];
        auto first = u.begin() + static_cast<std::ptrdiff_t>(t * plane);
        std::fill(first, first + static_cast<std::ptrdiff_t>(plane), static_cast<float>(p.u10));
        first = v.begin() + static_cast<std::ptrdiff_t>(t * plane);
        std::fill(first, first + static_cast<std::ptrdiff_t>(plane), static_cast<float>(p.v10));
        first = w.begin() + static_cast<std::ptrdiff_t>(t * plane);
        std::fill(first, first + static_cast<std::ptrdiff_t>(plane), static_cast<float>(p.swvl1));
      }
      break;
    }
    case SynthSpec::Kind::Random: {
      CounterRng root(seed);
      ValueNoise nu(root.substream(1), spec.u10_range);
      ValueNoise nv(root.substream(2), spec.v10_range);
      ValueNoise nw(root.substream(3), spec.swvl1_range);
      const double cells_per_node = spec.correlation_km / spec.spacing_km;
      for (int t = 0; t < spec.nt; ++t) {
        const double lt = t / spec.correlation_hours;
        for (int iy = 0; iy < spec.ny; ++iy) {
          const double ly = (iy + 0.5) / cells_per_node;
          for (int ix = 0; ix < spec.nx; ++ix) {
            const double lx = (ix + 0.5) / cells_per_node;
            auto i = (static_cast<std::size_t>(t) * spec.ny + iy) * spec.nx + ix;
            u[i] = static_cast<float>(nu.at(lx, ly, lt));
            v[i] = static_cast<float>(nv.at(lx, ly, lt));
            w[i] = static_cast<float>(nw.at(lx, ly, lt));
          }
        }
      }
      break;
    }
  }
  return EnvGrid(spec.nx, spec.ny, spec.nt, spec.spacing_km, spec.origin, std::move(u), std::move(v),
                 std::move(w), spec.start);
}

void BiomassSynthSpec::validate() const {
  if (nx < 1 || ny < 1) throw ValidationError("biomass spec: nx, ny must be >= 1");
  if (!(spacing_km > 0.0)) throw ValidationError("biomass spec: spacing_km must be > 0");
  check_range(range, "biomass", 0.0, std::numeric_limits<double>::infinity());
  if (!(correlation_km > 0.0)) throw ValidationError("biomass spec: correlation_km must be > 0");
}

BiomassSynthSpec BiomassSynthSpec::from_json(const json& j) {
  BiomassSynthSpec s;
  try {
    s.nx = j.at("nx").get<int>();
    s.ny = j.at("ny").get<int>();
    s.spacing_km = j.at("spacing_km").get<double>();
    s.origin = read_origin(j);
    if (j.contains("value")) {
      double v = j["value"].get<double>();
      s.range = {v, v};
    }
    s.range = read_range(j, "range", s.range);
    s.correlation_km = j.value("correlation_km", s.correlation_km);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("biomass spec: ") + e.what());
  }
  s.validate();
  return s;
}

json BiomassSynthSpec::to_json() const {
  return {{"nx", nx}, {"ny", ny}, {"spacing_km", spacing_km}, {"origin", {origin.x, origin.y}},
          {"range", {range.lo, range.hi}}, {"correlation_km", correlation_km}};
}

BiomassGrid synth_biomass(const BiomassSynthSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::vector<float> values(static_cast<std::size_t>(spec.nx) * spec.ny);
  ValueNoise noise(CounterRng(seed).substream(4), spec.range);
  const double cells_per_node = spec.correlation_km / spec.spacing_km;
  for (int iy = 0; iy < spec.ny; ++iy) {
    for (int ix = 0; ix < spec.nx; ++ix) {
      values[static_cast<std::size_t>(iy) * spec.nx + ix] =
          static_cast<float>(noise.at((ix + 0.5) / cells_per_node, (iy + 0.5) / cells_per_node, 0.0));
    }
  }
  return BiomassGrid(spec.nx, spec.ny, spec.spacing_km, spec.origin, std::move(values));
}

IncidentSynthSpec IncidentSynthSpec::from_json(const json& j) {
  IncidentSynthSpec s;
  try {
    s.count = j.value("count", s.count);
    s.start_hour_max = j.value("start_hour_max", s.start_hour_max);
    s.burn_hours = read_range(j, "burn_hours", s.burn_hours);
    s.area_km2 = read_range(j, "area_km2", s.area_km2);
    s.lat_fraction = read_range(j, "lat_fraction", s.lat_fraction);
    s.lon_fraction = read_range(j, "lon_fraction", s.lon_fraction);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("incident spec: ") + e.what());
  }
  if (s.count < 0 || s.start_hour_max < 1) {
    throw ValidationError("incident spec: count must be >= 0 and start_hour_max >= 1");
  }
  check_range(s.burn_hours, "burn_hours", 0.0, std::numeric_limits<double>::infinity());
  check_range(s.area_km2, "area_km2", 0.0, std::numeric_limits<double>::infinity());
  check_range(s.lat_fraction, "lat_fraction", 0.0, 1.0);
  check_range(s.lon_fraction, "lon_fraction", 0.0, 1.0);
  return s;
}

json IncidentSynthSpec::to_json() const {
  return {{"count", count},
          {"start_hour_max", start_hour_max},
          {"burn_hours", {burn_hours.lo, burn_hours.hi}},
          {"area_km2", {area_km2.lo, area_km2.hi}},
          {"lat_fraction", {lat_fraction.lo, lat_fraction.hi}},
          {"lon_fraction", {lon_fraction.lo, lon_fraction.hi}}};
}

void write_synth_incidents(const fs::path& path, const IncidentSynthSpec& spec, const GeoTransform& gt,
                           TimePoint start, std::uint64_t seed) {
  gt.validate();
  CounterRng rng = CounterRng(seed).substream(5);
  auto lerp = [](Range r, double u) { return r.lo + (r.hi - r.lo) * u; };
  std::ostringstream out;
  out << "id,start_iso8601,lat_deg,lon_deg,contained_iso8601,area_acre\n";
  for (int i = 0; i < spec.count; ++i) {
    const std::uint64_t c = static_cast<std::uint64_t>(i) * 8;
    auto hour = static_cast<long long>(rng.uniform(c) * spec.start_hour_max);
    auto minute = static_cast<long long>(rng.uniform(c + 1) * 60.0);
    double lat = gt.lat_min + (gt.lat_max - gt.lat_min) * lerp(spec.lat_fraction, rng.uniform(c + 2));
    double lon = gt.lon_min + (gt.lon_max - gt.lon_min) * lerp(spec.lon_fraction, rng.uniform(c + 3));
    auto burn_minutes = static_cast<long long>(std::llround(lerp(spec.burn_hours, rng.uniform(c + 4)) * 60.0));
    double acres = lerp(spec.area_km2, rng.uniform(c + 5)) / kKm2PerAcre;
    TimePoint t0 = start + std::chrono::hours(hour) + std::chrono::minutes(minute);
    TimePoint t1 = t0 + std::chrono::minutes(burn_minutes);
    char id[32];
    std::snprintf(id, sizeof id, "SYN-%03d", i + 1);
    out << id << ',' << format_iso8601(t0) << ',' << io::format_double(lat) << ','
        << io::format_double(lon) << ',' << format_iso8601(t1) << ',' << io::format_double(acres) << '\n';
  }
  io::write_file_atomic(path, out.str());
}

}  // namespace wildfire
