#pragma once

#include <cmath>
#include <compare>

namespace wildfire {

/// Planar position or displacement in kilometres.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
  constexpr Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
  constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Point2& operator+=(Point2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  friend constexpr bool operator==(Point2, Point2) = default;
  // lexicographic (x, then y)
  friend constexpr auto operator<=>(Point2, Point2) = default;
};

inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// Axis-aligned rectangle [x0, x0 + width] x [y0, y0 + height] (km).
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double width = 0.0;
  double height = 0.0;

  double x1() const { return x0 + width; }
  double y1() const { return y0 + height; }
  double area() const { return width * height; }
  bool contains(Point2 p) const {
    return p.x >= x0 && p.x <= x1() && p.y >= y0 && p.y <= y1();
  }
};

}  // namespace wildfire
