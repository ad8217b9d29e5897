#include "wildfire/firekernel.hpp"

#include <cmath>
#include <numbers>

#include "wildfire/error.hpp"

namespace wildfire {

namespace {

void require_non_negative(double v, const char* name) {
  if (!(v >= 0.0)) throw ValidationError(std::string(name) + " must be >= 0 (got " + std::to_string(v) + ")");
}

}  // namespace

void FireConstants::validate() const {
  if (!(u_max_ms > 0.0)) throw ValidationError("u_max_ms must be > 0");
  if (!(g0 >= 0.0 && g0 <= 1.0)) throw ValidationError("g0 must be in [0, 1]");
  if (!(wind_scale_m2s2 > 0.0)) throw ValidationError("wind_scale_m2s2 must be > 0");
  if (!(beta_e > 0.0)) throw ValidationError("beta_e must be > 0");
  if (!(back_ratio >= 0.0 && back_ratio <= 1.0)) throw ValidationError("back_ratio must be in [0, 1]");
  if (!(lb_gain >= 0.0)) throw ValidationError("lb_gain must be >= 0");
  if (!(lb_decay >= 0.0)) throw ValidationError("lb_decay must be >= 0");
}

WindSample wind_from_components(double u10, double v10) {
  const double speed = std::hypot(u10, v10);
  if (speed == 0.0) return {0.0, 0.0};
  double theta = std::atan2(v10, u10);
  // atan2 can return -pi for (negative, -0.0); fold into (-pi, pi]
  if (theta <= -std::numbers::pi) theta = std::numbers::pi;
  return {speed, theta};
}

double wind_factor(double ws, const FireConstants& c) {
  require_non_negative(ws, "wind speed");
  return 1.0 - (1.0 - c.g0) * std::exp(-ws * ws / c.wind_scale_m2s2);
}

double moisture_factor(double beta_root, const FireConstants& c) {
  require_non_negative(beta_root, "soil wetness");
  const double beta_m = std::min(beta_root / c.beta_e, 1.0);
  return (1.0 - beta_m) * (1.0 - beta_m);
}

double spread_speed(double ws, double beta_root, const FireConstants& c) {
  return c.u_max_ms * wind_factor(ws, c) * moisture_factor(beta_root, c);
}

double length_breadth_ratio(double ws, const FireConstants& c) {
  require_non_negative(ws, "wind speed");
  return 1.0 + c.lb_gain * (1.0 - std::exp(-c.lb_decay * ws));
}

SpreadSpeeds speeds(double ws, double beta_root, const FireConstants& c) {
  SpreadSpeeds s;
  s.u_p = spread_speed(ws, beta_root, c);
  s.u_b = c.back_ratio * s.u_p;
  s.v = (s.u_p + s.u_b) / (2.0 * length_breadth_ratio(ws, c));
  return s;
}

FireEllipse ellipse_from_ignition(Point2 ignition, WindSample wind, double beta_root, double dt_s,
                                  int t, const FireConstants& c) {
  if (!(dt_s > 0.0)) throw ValidationError("dt_s must be > 0");
  const SpreadSpeeds s = speeds(wind.speed_ms, beta_root, c);
  const double to_km = dt_s / 1000.0;
  const Point2 axis{std::cos(wind.theta_rad), std::sin(wind.theta_rad)};
  FireEllipse e;
  e.ignition = ignition;
  e.theta_rad = wind.theta_rad;
  e.semi_major_km = 0.5 * (s.u_p + s.u_b) * to_km;
  e.semi_minor_km = s.v * to_km;
  e.center = ignition + axis * (0.5 * (s.u_p - s.u_b) * to_km);
  e.t_created = t;
  return e;
}

std::array<Point2, 4> axis_endpoints(const FireEllipse& e) {
  const Point2 axis{std::cos(e.theta_rad), std::sin(e.theta_rad)};
  const Point2 normal{-axis.y, axis.x};
  return {e.center + axis * e.semi_major_km, e.center - axis * e.semi_major_km,
          e.center + normal * e.semi_minor_km, e.center - normal * e.semi_minor_km};
}

}  // namespace wildfire
