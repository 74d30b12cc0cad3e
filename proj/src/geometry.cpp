// Copyright (c) 2026 The rotdet authors
// SPDX-License-Identifier: Apache-2.0

#include "rotdet/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rotdet {

namespace {

constexpr double kSliverArea = 1e-12;

// Angle congruent mod pi, in [-pi/2, pi/2). Exactly +pi/2 folds down to
// -pi/2, keeping the canonical range half-open at the top.
double wrap_to_canonical(double theta) {
  double r = std::remainder(theta, kPi);
  if (r >= kHalfPi) r -= kPi;
  return r;
}

}  // namespace

bool is_valid_box(const ObbBox& box) {
  return std::isfinite(box.cx) && std::isfinite(box.cy) && std::isfinite(box.w) &&
         std::isfinite(box.h) && std::isfinite(box.theta) && box.w > 0.0 && box.h > 0.0;
}

ObbBox canonicalize(const ObbBox& box) {
  if (!is_valid_box(box)) {
    std::ostringstream msg;
    msg << "invalid box (cx=" << box.cx << ", cy=" << box.cy << ", w=" << box.w
        << ", h=" << box.h << ", theta=" << box.theta << ")";
    throw std::invalid_argument(msg.str());
  }
  ObbBox out = box;
  if (out.w > out.h) {
    // Swapping the extents and quarter-turning the frame describes the same
    // point set.
    std::swap(out.w, out.h);
    out.theta += kHalfPi;
  }
  out.theta = wrap_to_canonical(out.theta);
  return out;
}

double wrap_angle_delta(double delta) {
  // std::remainder is exact, so the result is pi-periodic in delta whenever
  // the caller's shifts by k*pi are themselves exact.
  double r = std::remainder(delta, kPi);
  if (r <= -kHalfPi) r += kPi;  // fold the lower singular boundary onto +pi/2
  return r;
}

Polygon obb_corners(const ObbBox& box) {
  const double c = std::cos(box.theta);
  const double s = std::sin(box.theta);
  const double hw = 0.5 * box.w;
  const double hh = 0.5 * box.h;
  // Local corners (-,-), (-,+), (+,+), (+,-) keep the y-down counter-clockwise
  // order after rotation.
  const Vec2 local[4] = {{-hw, -hh}, {-hw, hh}, {hw, hh}, {hw, -hh}};
  Polygon poly;
  poly.vertices.reserve(4);
  for (const Vec2& l : local) {
    poly.vertices.push_back({box.cx + c * l.x - s * l.y, box.cy + s * l.x + c * l.y});
  }
  return poly;
}

double polygon_area(const Polygon& p) {
  if (p.size() < 3) return 0.0;
  double twice = 0.0;
  const auto& v = p.vertices;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    twice += cross(v[j], v[i]);
  }
  return std::abs(twice) * 0.5;
}

Polygon convex_clip(const Polygon& subject, const Polygon& clip) {
  if (subject.size() < 3 || clip.size() < 3) return {};

  // Our counter-clockwise-on-screen orientation puts the interior on the
  // non-positive cross product side of each directed clip edge.
  std::vector<Vec2> output = subject.vertices;
  std::vector<Vec2> input;
  const auto& cv = clip.vertices;
  for (std::size_t e = 0, eprev = cv.size() - 1; e < cv.size(); eprev = e++) {
    if (output.size() < 3) return {};
    input.swap(output);
    output.clear();

    const Vec2 a = cv[eprev];
    const Vec2 edge = cv[e] - a;
    for (std::size_t i = 0, iprev = input.size() - 1; i < input.size(); iprev = i++) {
      const Vec2& prev = input[iprev];
      const Vec2& cur = input[i];
      const double dprev = cross(edge, prev - a);
      const double dcur = cross(edge, cur - a);
      const bool prev_in = dprev <= 0.0;
      const bool cur_in = dcur <= 0.0;
      if (prev_in != cur_in) {
        // Edge crossing: dprev != dcur because the signs differ.
        const double t = dprev / (dprev - dcur);
        output.push_back(prev + (cur - prev) * t);
      }
      if (cur_in) output.push_back(cur);
    }
  }
  if (output.size() < 3) return {};
  Polygon result{std::move(output)};
  if (polygon_area(result) < kSliverArea) return {};
  return result;
}

double rotated_iou(const ObbBox& a, const ObbBox& b) {
  // Work relative to the midpoint of the two centers; large image coordinates
  // would otherwise eat precision in the clipping arithmetic.
  const double mx = 0.5 * (a.cx + b.cx);
  const double my = 0.5 * (a.cy + b.cy);
  ObbBox as = a, bs = b;
  as.cx -= mx;
  as.cy -= my;
  bs.cx -= mx;
  bs.cy -= my;

  const double area_a = a.w * a.h;
  const double area_b = b.w * b.h;
  const double inter = polygon_area(convex_clip(obb_corners(as), obb_corners(bs)));
  const double uni = area_a + area_b - inter;
  if (uni <= 0.0) return 0.0;
  double iou = inter / uni;
  if (iou < 0.0) iou = 0.0;
  if (iou > 1.0) iou = 1.0;
  return iou;
}

}  // namespace rotdet
