#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "wildfire/error.hpp"
#include "wildfire/firekernel.hpp"

using namespace wildfire;
using doctest::Approx;

TEST_CASE("wind factor") {
  CHECK(wind_factor(0.0) == Approx(0.1).epsilon(1e-15));
  CHECK(wind_factor(50.0) == Approx(0.668909).epsilon(1e-6));
  CHECK(wind_factor(50.0) == Approx(1.0 - 0.9 * std::exp(-1.0)).epsilon(1e-15));
  CHECK(wind_factor(100.0) == Approx(0.983516).epsilon(1e-6));
  CHECK_THROWS_AS(wind_factor(-1.0), ValidationError);
}

TEST_CASE("moisture factor") {
  CHECK(moisture_factor(0.0) == 1.0);
  CHECK(moisture_factor(0.35) == 0.0);
  CHECK(moisture_factor(0.175) == Approx(0.25).epsilon(1e-14));
  CHECK(moisture_factor(0.9) == 0.0);
  CHECK_THROWS_AS(moisture_factor(-0.01), ValidationError);
}

TEST_CASE("spread speed") {
  CHECK(spread_speed(0.0, 0.0) == Approx(0.013).epsilon(1e-14));
  CHECK(spread_speed(37.0, 0.5) == 0.0);
  CHECK(spread_speed(50.0, 0.175) == Approx(0.021741).epsilon(1e-5));
  CHECK_THROWS_AS(spread_speed(-1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(spread_speed(1.0, -0.1), ValidationError);
}

TEST_CASE("length to breadth ratio") {
  CHECK(length_breadth_ratio(0.0) == 1.0);
  CHECK(length_breadth_ratio(50.0) == Approx(6.725851).epsilon(1e-6));
  CHECK(length_breadth_ratio(1000.0) < 11.0);
  CHECK(length_breadth_ratio(1000.0) > 10.99);
}

TEST_CASE("speeds") {
  auto s = speeds(0.0, 0.0);
  CHECK(s.u_p == Approx(0.013).epsilon(1e-14));
  CHECK(s.u_b == Approx(0.0026).epsilon(1e-14));
  CHECK(s.v == Approx(0.0078).epsilon(1e-14));

  auto wet = speeds(12.0, 0.4);
  CHECK(wet.u_p == 0.0);
  CHECK(wet.u_b == 0.0);
  CHECK(wet.v == 0.0);

  auto w = speeds(50.0, 0.0);
  CHECK(w.u_p == Approx(0.086962).epsilon(1e-5));
  CHECK(w.u_b == Approx(0.017392).epsilon(1e-4));
  CHECK(w.v == Approx(0.007757).epsilon(1e-4));
  CHECK(w.u_b == 0.2 * w.u_p);
}

TEST_CASE("wind direction uses the full quadrant") {
  CHECK(wind_from_components(0.0, 0.0).theta_rad == 0.0);
  CHECK(wind_from_components(3.0, 4.0).speed_ms == Approx(5.0));
  CHECK(wind_from_components(-1.0, 0.0).theta_rad == Approx(std::numbers::pi));
  CHECK(wind_from_components(-1.0, -0.0).theta_rad == Approx(std::numbers::pi));
  CHECK(wind_from_components(-1.0, -1.0).theta_rad == Approx(-0.75 * std::numbers::pi));
}

TEST_CASE("ellipse geometry from a forced head speed") {
  // u_max chosen so that u_p = 0.1 m/s at zero wind and dry soil
  FireConstants c;
  c.u_max_ms = 1.0;
  c.g0 = 0.1;
  auto e = ellipse_from_ignition({0.0, 0.0}, {0.0, 0.0}, 0.0, 3600.0, 0, c);
  auto pts = axis_endpoints(e);
  CHECK(pts[0].x == Approx(0.360).epsilon(1e-12));
  CHECK(pts[0].y == Approx(0.0));
  CHECK(pts[1].x == Approx(-0.072).epsilon(1e-12));
  CHECK(e.center.x == Approx(0.144).epsilon(1e-12));
  const double b = e.semi_minor_km;
  CHECK(b == Approx(0.6 * 0.1 * 3.6).epsilon(1e-12));
  CHECK(pts[2].x == Approx(0.144));
  CHECK(pts[2].y == Approx(b));
  CHECK(pts[3].y == Approx(-b));
  CHECK_THROWS_AS(ellipse_from_ignition({0, 0}, {0, 0}, 0.0, 0.0, 0), ValidationError);
}

TEST_CASE("degenerate ellipse on soaked soil") {
  auto e = ellipse_from_ignition({3.0, 4.0}, {0.0, 0.0}, 0.35, 3600.0, 7);
  CHECK(e.t_created == 7);
  for (auto p : axis_endpoints(e)) CHECK(p == Point2{3.0, 4.0});
}

TEST_CASE("ellipse is equivariant under rotation and translation") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi), pos(-50, 50), ws(0, 30),
      beta(0, 0.3);
  for (int i = 0; i < 200; ++i) {
    const double w = ws(gen), b = beta(gen), th = ang(gen), rot = ang(gen);
    const Point2 ign{pos(gen), pos(gen)};
    auto base = axis_endpoints(ellipse_from_ignition({0, 0}, {w, th}, b, 3600.0, 0));
    auto moved = axis_endpoints(ellipse_from_ignition(ign, {w, th + rot}, b, 3600.0, 0));
    for (int k = 0; k < 4; ++k) {
      const Point2 r{base[k].x * std::cos(rot) - base[k].y * std::sin(rot),
                     base[k].x * std::sin(rot) + base[k].y * std::cos(rot)};
      CHECK(moved[k].x == Approx(ign.x + r.x).epsilon(1e-9));
      CHECK(moved[k].y == Approx(ign.y + r.y).epsilon(1e-9));
    }
  }
}

TEST_CASE("axis endpoints lie on the ellipse and the ignition is inside") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ang(-3.1, 3.1), ws(0.1, 40), beta(0, 0.3);
  for (int i = 0; i < 200; ++i) {
    auto e = ellipse_from_ignition({1.0, -2.0}, {ws(gen), ang(gen)}, beta(gen), 3600.0, 0);
    const double c = std::cos(e.theta_rad), s = std::sin(e.theta_rad);
    auto level = [&](Point2 p) {
      const Point2 d = p - e.center;
      const double a = (c * d.x + s * d.y) / e.semi_major_km;
      const double b = (-s * d.x + c * d.y) / e.semi_minor_km;
      return a * a + b * b;
    };
    for (auto p : axis_endpoints(e)) CHECK(level(p) == Approx(1.0).epsilon(1e-9));
    CHECK(level(e.ignition) <= 1.0 + 1e-12);
  }
}

TEST_CASE("factors agree with closed forms") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> ws(0, 120), beta(0, 1);
  for (int i = 0; i < 500; ++i) {
    const double w = ws(gen), b = beta(gen);
    CHECK(wind_factor(w) == Approx(oracle::g(w)).epsilon(1e-12));
    CHECK(moisture_factor(b) == Approx(oracle::h(b)).epsilon(1e-12));
    CHECK(length_breadth_ratio(w) == Approx(oracle::lb(w)).epsilon(1e-12));
    auto s = speeds(w, b);
    if (s.u_p > 0) CHECK((s.u_p + s.u_b) / (2 * s.v) == Approx(oracle::lb(w)).epsilon(1e-12));
  }
}

TEST_CASE("custom constants are honoured") {
  FireConstants c;
  c.u_max_ms = 0.2;
  c.beta_e = 0.5;
  CHECK(spread_speed(0.0, 0.25, c) == Approx(0.2 * 0.1 * 0.25));
  c.u_max_ms = -1;
  CHECK_THROWS_AS(c.validate(), ValidationError);
}
