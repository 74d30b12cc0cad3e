// Copyright (c) 2026 The rotdet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace rotdet {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = kPi / 2.0;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& p) const { return {x + p.x, y + p.y}; }
  Vec2 operator-(const Vec2& p) const { return {x - p.x, y - p.y}; }
  Vec2 operator*(double k) const { return {x * k, y * k}; }
};

inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

// Rotated rectangle in image pixels. The image y axis points down; a positive
// theta rotates the box's local x axis toward +y. w is the extent along the
// local x axis, h along the local y axis.
struct ObbBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;
  double theta = 0.0;  // radians
};

// Convex polygon. Vertices are ordered counter-clockwise as seen on screen
// with y pointing down (signed shoelace sum is negative); empty means no area.
struct Polygon {
  std::vector<Vec2> vertices;

  bool empty() const { return vertices.empty(); }
  std::size_t size() const { return vertices.size(); }
};

// True when all fields are finite and both extents are positive.
bool is_valid_box(const ObbBox& box);

// Unique representative of the box's point set with w <= h and
// theta in [-pi/2, pi/2). Throws std::invalid_argument on an invalid box.
ObbBox canonicalize(const ObbBox& box);

// Reduces an angle difference modulo pi into (-pi/2, pi/2]. Singular inputs
// delta = k*pi + pi/2 map to exactly +pi/2; callers treating the result as a
// residual must zero its gradient there.
double wrap_angle_delta(double delta);

// The box's 4 corners as a Polygon (counter-clockwise, y-down convention).
Polygon obb_corners(const ObbBox& box);

// Sutherland-Hodgman intersection of two convex polygons. Near-zero-area
// results (< 1e-12 square pixels) collapse to the empty polygon.
Polygon convex_clip(const Polygon& subject, const Polygon& clip);

// Shoelace area, non-negative. Empty polygon -> 0.
double polygon_area(const Polygon& p);

// Intersection-over-union of two rotated rectangles, in [0, 1].
double rotated_iou(const ObbBox& a, const ObbBox& b);

}  // namespace rotdet
