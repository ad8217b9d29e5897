#pragma once

#include <array>

#include "wildfire/envdata.hpp"
#include "wildfire/geometry.hpp"

namespace wildfire {

/// Constants of the single-ellipse spread model. Defaults are the published values.
struct FireConstants {
  double u_max_ms = 0.13;          // maximum head-fire speed (m/s)
  double g0 = 0.1;                 // wind factor at zero wind
  double wind_scale_m2s2 = 2500.0; // denominator of the Gaussian wind term
  double beta_e = 0.35;            // soil wetness at which spread stops
  double back_ratio = 0.2;         // u_b / u_p
  double lb_gain = 10.0;           // L_B = 1 + gain * (1 - exp(-decay * ws))
  double lb_decay = 0.017;

  void validate() const;
};

struct WindSample {
  double speed_ms = 0.0;
  double theta_rad = 0.0;  // direction the wind blows towards, from +x, in (-pi, pi]
};

/// Wind speed and direction from u/v components. Calm air gets theta = 0.
WindSample wind_from_components(double u10, double v10);

struct SpreadSpeeds {
  double u_p = 0.0;  // head (downwind) speed, m/s
  double u_b = 0.0;  // back (upwind) speed, m/s
  double v = 0.0;    // flank speed, m/s
};

struct FireEllipse {
  Point2 ignition;
  Point2 center;
  double semi_major_km = 0.0;
  double semi_minor_km = 0.0;
  double theta_rad = 0.0;
  int t_created = 0;
};

/// g(ws) = 1 - (1 - g0) exp(-ws^2 / scale)
double wind_factor(double ws, const FireConstants& c = {});
/// h(beta) = (1 - min(beta / beta_e, 1))^2
double moisture_factor(double beta_root, const FireConstants& c = {});
/// u_p = u_max * g(ws) * h(beta)
double spread_speed(double ws, double beta_root, const FireConstants& c = {});
/// L_B = 1 + gain * (1 - exp(-decay * ws))
double length_breadth_ratio(double ws, const FireConstants& c = {});
SpreadSpeeds speeds(double ws, double beta_root, const FireConstants& c = {});

/// Ellipse grown from `ignition` over dt_s seconds. The head vertex lands at
/// ignition + u_p*dt along theta, the rear vertex at ignition - u_b*dt, and the
/// flanks at center +/- v*dt perpendicular to theta.
FireEllipse ellipse_from_ignition(Point2 ignition, WindSample wind, double beta_root, double dt_s,
                                  int t, const FireConstants& c = {});

/// Head vertex, rear vertex, left flank, right flank.
std::array<Point2, 4> axis_endpoints(const FireEllipse& e);

}  // namespace wildfire
