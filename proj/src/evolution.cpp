#include "wildfire/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wildfire/error.hpp"
#include "wildfire/io.hpp"

namespace wildfire {

Frontier Frontier::ignition(Point2 p, int t) {
  Frontier f;
  f.t = t;
  f.points.push_back({p, 1.0, p});
  return f;
}

Point2 Frontier::centroid() const {
  double w = dropped_weight;
  Point2 m = dropped_moment;
  for (const auto& p : points) {
    w += p.weight;
    m += p.moment;
  }
  if (!(w > 0.0)) {
    // all mass underflowed; fall back to the plain mean
    Point2 sum;
    for (const auto& p : points) sum += p.pos;
    return points.empty() ? Point2{} : sum * (1.0 / static_cast<double>(points.size()));
  }
  return m * (1.0 / w);
}

double BurnCircle::area_km2() const { return std::numbers::pi * radius_km * radius_km; }

namespace {

struct Offsets {
  std::array<Point2, 4> vertex;
  Point2 mean;  // mean of the four vertices = ellipse centre offset
  bool spreads = false;
};

Offsets offsets_for(const EnvSample& s, double dt_s, const FireConstants& c) {
  const WindSample wind = wind_from_components(s.u10, s.v10);
  const FireEllipse e = ellipse_from_ignition({0.0, 0.0}, wind, std::max(0.0, s.swvl1), dt_s, 0, c);
  Offsets o;
  o.vertex = axis_endpoints(e);
  o.mean = e.center;
  o.spreads = e.semi_major_km > 0.0;
  return o;
}

// Small memo: neighbouring frontier points usually sit in the same env cell.
class OffsetCache {
 public:
  OffsetCache(double dt_s, const FireConstants& c) : dt_(dt_s), c_(c) {}
  const Offsets& get(const EnvSample& s) {
    if (!valid_ || s.u10 != last_.u10 || s.v10 != last_.v10 || s.swvl1 != last_.swvl1) {
      value_ = offsets_for(s, dt_, c_);
      last_ = s;
      valid_ = true;
    }
    return value_;
  }

 private:
  double dt_;
  const FireConstants& c_;
  bool valid_ = false;
  EnvSample last_;
  Offsets value_;
};

}  // namespace

Frontier step(const Frontier& frontier, const EnvGrid& env, double dt_s, const FireConstants& c) {
  if (frontier.t < 0 || frontier.t + 1 >= env.nt()) {
    throw std::out_of_range("step: hour " + std::to_string(frontier.t + 1) + " is beyond the env time range");
  }
  if (!(dt_s > 0.0)) throw ValidationError("dt_s must be > 0");
  OffsetCache cache(dt_s, c);
  Frontier next;
  next.t = frontier.t + 1;
  next.points.reserve(frontier.points.size() * 4);
  for (const auto& p : frontier.points) {
    const Offsets& o = cache.get(env.sample_clamped(p.pos, frontier.t));
    if (!o.spreads) {
      next.points.push_back(p);
      continue;
    }
    const double w = 0.25 * p.weight;
    const Point2 m = p.moment * 0.25;
    for (const auto& v : o.vertex) next.points.push_back({p.pos + v, w, m + v * w});
  }
  next.dropped_weight = frontier.dropped_weight;
  next.dropped_moment = frontier.dropped_moment;
  if (frontier.dropped_weight > 0.0) {
    const Point2 g = frontier.dropped_moment * (1.0 / frontier.dropped_weight);
    const Offsets& o = cache.get(env.sample_clamped(g, frontier.t));
    next.dropped_moment += o.mean * frontier.dropped_weight;
  }
  return next;
}

BurnCircle burned_circle(const std::vector<Point2>& points) {
  if (points.empty()) throw ValidationError("burned_circle: empty point set");
  Point2 sum;
  for (auto p : points) sum += p;
  BurnCircle c;
  c.center = sum * (1.0 / static_cast<double>(points.size()));
  for (auto p : points) c.radius_km = std::max(c.radius_km, distance(p, c.center));
  return c;
}

BurnCircle burned_circle(const Frontier& frontier) {
  if (frontier.points.empty()) throw ValidationError("burned_circle: empty frontier");
  BurnCircle c;
  c.center = frontier.centroid();
  for (const auto& p : frontier.points) c.radius_km = std::max(c.radius_km, distance(p.pos, c.center));
  return c;
}

Frontier prune(const Frontier& frontier, const std::optional<BurnCircle>& prev_circle, double snap_km,
               double margin_km) {
  if (!(snap_km >= 0.0) || !(margin_km >= 0.0)) throw ValidationError("prune: snap and margin must be >= 0");
  if (frontier.points.empty()) return frontier;

  const Point2 center = frontier.centroid();
  std::size_t farthest = 0;
  double farthest_d = -1.0;
  for (std::size_t i = 0; i < frontier.points.size(); ++i) {
    const double d = distance(frontier.points[i].pos, center);
    if (d > farthest_d || (d == farthest_d && frontier.points[i].pos < frontier.points[farthest].pos)) {
      farthest = i;
      farthest_d = d;
    }
  }

  Frontier out;
  out.t = frontier.t;
  out.dropped_weight = frontier.dropped_weight;
  out.dropped_moment = frontier.dropped_moment;
  out.points.reserve(frontier.points.size());
  const double inner = prev_circle ? prev_circle->radius_km - margin_km : -1.0;
  for (std::size_t i = 0; i < frontier.points.size(); ++i) {
    const auto& p = frontier.points[i];
    if (i != farthest && inner > 0.0 && distance(p.pos, prev_circle->center) < inner) {
      out.dropped_weight += p.weight;
      out.dropped_moment += p.moment;
    } else {
      out.points.push_back(p);
    }
  }
  if (!(snap_km > 0.0)) return out;

  struct Keyed {
    long long kx, ky;
    double dist;
    std::size_t idx;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(out.points.size());
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    const auto& p = out.points[i].pos;
    keyed.push_back({static_cast<long long>(std::floor(p.x / snap_km)),
                     static_cast<long long>(std::floor(p.y / snap_km)), distance(p, center), i});
  }
  // within a cell: farthest first, then lexicographically smallest
  std::sort(keyed.begin(), keyed.end(), [&](const Keyed& a, const Keyed& b) {
    if (a.kx != b.kx) return a.kx < b.kx;
    if (a.ky != b.ky) return a.ky < b.ky;
    if (a.dist != b.dist) return a.dist > b.dist;
    return out.points[a.idx].pos < out.points[b.idx].pos;
  });
  std::vector<FrontierPoint> merged;
  merged.reserve(keyed.size());
  for (std::size_t i = 0; i < keyed.size();) {
    FrontierPoint rep = out.points[keyed[i].idx];
    std::size_t j = i + 1;
    for (; j < keyed.size() && keyed[j].kx == keyed[i].kx && keyed[j].ky == keyed[i].ky; ++j) {
      rep.weight += out.points[keyed[j].idx].weight;
      rep.moment += out.points[keyed[j].idx].moment;
    }
    merged.push_back(rep);
    i = j;
  }
  out.points = std::move(merged);
  return out;
}

std::optional<std::size_t> detect(const BurnCircle& circle, const SensorIndex& sensors) {
  return sensors.lowest_within(circle.center, circle.radius_km);
}

void EvolutionConfig::validate() const {
  fire.validate();
  if (!(dt_s > 0.0)) throw ValidationError("evolution.dt_s must be > 0");
  if (!(snap_km >= 0.0)) throw ValidationError("evolution.snap_km must be >= 0");
  if (!(margin_km >= 0.0)) throw ValidationError("evolution.margin_km must be >= 0");
  if (!(max_hours >= 0.0)) throw ValidationError("evolution.max_hours must be >= 0");
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Detected: return "detected";
    case StopReason::Cap: return "cap";
    case StopReason::EnvEnd: return "env_end";
  }
  return "unknown";
}

IncidentResult simulate_incident(const Incident& incident, const EnvGrid& env, const SensorIndex& sensors,
                                 const EvolutionConfig& cfg) {
  validate_incident(incident, env);
  const double cap = incident.historical_burn_hours.value_or(cfg.max_hours);
  const double hours_per_step = cfg.dt_s / 3600.0;

  IncidentResult result;
  result.incident_id = incident.id;
  Frontier frontier = Frontier::ignition(incident.ignition, incident.start_hour);
  BurnCircle circle{incident.ignition, 0.0};
  result.final_circle = circle;

  if (cfg.detect_at_ignition) {
    if (auto hit = detect(circle, sensors)) {
      result.detected = true;
      result.detecting_sensor = hit;
      result.stop = StopReason::Detected;
      return result;
    }
  }

  double elapsed = 0.0;
  while (true) {
    if (elapsed >= cap) {
      result.stop = StopReason::Cap;
      break;
    }
    if (frontier.t + 1 >= env.nt()) {
      result.stop = StopReason::EnvEnd;
      break;
    }
    const BurnCircle prev = circle;
    frontier = step(frontier, env, cfg.dt_s, cfg.fire);
    ++result.steps;
    elapsed = result.steps * hours_per_step;
    circle = burned_circle(frontier);
    if (cfg.keep_trace) result.trace.push_back({result.steps, circle, frontier.size()});
    result.final_circle = circle;
    if (auto hit = detect(circle, sensors)) {
      result.detected = true;
      result.detecting_sensor = hit;
      result.stop = StopReason::Detected;
      break;
    }
    if (cfg.prune) frontier = prune(frontier, prev, cfg.snap_km, cfg.margin_km);
  }
  result.burned_hours = std::min(elapsed, cap);
  result.burned_area_km2 = result.final_circle.area_km2();
  return result;
}

std::string trace_csv(const IncidentResult& result) {
  std::ostringstream out;
  out << "t,center_x_km,center_y_km,radius_km,n_frontier\n";
  for (const auto& row : result.trace) {
    out << row.hour << ',' << io::format_double(row.circle.center.x) << ','
        << io::format_double(row.circle.center.y) << ',' << io::format_double(row.circle.radius_km) << ','
        << row.n_frontier << '\n';
  }
  return out.str();
}

}  // namespace wildfire
