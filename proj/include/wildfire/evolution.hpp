#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wildfire/envdata.hpp"
#include "wildfire/firekernel.hpp"
#include "wildfire/geometry.hpp"
#include "wildfire/sensors.hpp"

namespace wildfire {

/// One active ignition point. Every point stands for a share of the fire's
/// total "mass" (the fraction of all branched ignition points it represents);
/// `moment` is weight times the centroid of that share. Without pruning,
/// moment == weight * pos and all weights at a given hour are equal.
struct FrontierPoint {
  Point2 pos;
  double weight = 1.0;
  Point2 moment;
};

struct Frontier {
  std::vector<FrontierPoint> points;
  int t = 0;
  // mass of points dropped by prune(), kept so the burned-circle centre still
  // averages over every branched point
  double dropped_weight = 0.0;
  Point2 dropped_moment;

  static Frontier ignition(Point2 p, int t);
  Point2 centroid() const;
  std::size_t size() const { return points.size(); }
};

struct BurnCircle {
  Point2 center;
  double radius_km = 0.0;
  double area_km2() const;
};

/// Grows every frontier point into its ellipse using the wind and soil
/// wetness sampled at that point and hour, and replaces it with the four axis
/// endpoints (each carrying a quarter of its mass). A point whose ellipse has
/// zero size re-emits itself. Positions beyond the env extent sample the
/// nearest edge cell. Throws if hour t + 1 is outside the env time range.
Frontier step(const Frontier& frontier, const EnvGrid& env, double dt_s, const FireConstants& c = {});

/// Arithmetic mean centre, radius = largest distance from the centre.
BurnCircle burned_circle(const std::vector<Point2>& points);
/// Mass-weighted centre (including dropped mass), radius over the active points.
BurnCircle burned_circle(const Frontier& frontier);

/// (a) Drops points strictly inside prev_circle shrunk by margin_km (their
/// mass is folded into the frontier's dropped mass); the point farthest from
/// the current centre is always kept. (b) With snap_km > 0, merges points that
/// share a snap_km lattice cell; the merged point keeps the member farthest
/// from the current centre (ties: lexicographically smallest) and the summed
/// mass. Output order is deterministic.
Frontier prune(const Frontier& frontier, const std::optional<BurnCircle>& prev_circle, double snap_km,
               double margin_km);

/// Lowest-index sensor inside the closed disk, if any.
std::optional<std::size_t> detect(const BurnCircle& circle, const SensorIndex& sensors);

struct EvolutionConfig {
  FireConstants fire;
  double dt_s = 3600.0;
  double snap_km = 0.05;
  double margin_km = 0.0;
  bool prune = true;
  double max_hours = 240.0;       // cap for incidents without a historical duration
  bool detect_at_ignition = true; // check sensors before the first step
  bool keep_trace = false;

  void validate() const;
};

enum class StopReason { Detected, Cap, EnvEnd };
const char* to_string(StopReason r);

struct TraceRow {
  int hour = 0;  // hours since ignition
  BurnCircle circle;
  std::size_t n_frontier = 0;
};

struct IncidentResult {
  std::string incident_id;
  bool detected = false;
  double burned_hours = 0.0;  // hours until detection, cap or end of data
  double burned_area_km2 = 0.0;
  BurnCircle final_circle;
  std::optional<std::size_t> detecting_sensor;
  StopReason stop = StopReason::Cap;
  int steps = 0;
  std::vector<TraceRow> trace;
};

/// Runs one fire from its ignition until a sensor falls inside the burned
/// circle, the cap is reached (historical duration when known, else
/// cfg.max_hours) or the env data ends.
IncidentResult simulate_incident(const Incident& incident, const EnvGrid& env, const SensorIndex& sensors,
                                 const EvolutionConfig& cfg);

std::string trace_csv(const IncidentResult& result);

}  // namespace wildfire
