// Copyright (c) 2026 The rotdet authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force reference implementations used only to cross-check the library.
// Everything here is deliberately independent of the code under test.

#pragma once

#include <algorithm>
#include <cmath>

#include "rotdet/geometry.hpp"

namespace rotdet::oracle {

// Membership test in the box's own frame; shares no code with the clipper.
struct ObbFrame {
  double cx, cy, cos_t, sin_t, half_w, half_h;

  explicit ObbFrame(const ObbBox& box)
      : cx(box.cx),
        cy(box.cy),
        cos_t(std::cos(box.theta)),
        sin_t(std::sin(box.theta)),
        half_w(0.5 * box.w),
        half_h(0.5 * box.h) {}

  bool contains(double px, double py) const {
    const double dx = px - cx;
    const double dy = py - cy;
    const double lx = cos_t * dx + sin_t * dy;  // inverse rotation
    const double ly = -sin_t * dx + cos_t * dy;
    return std::abs(lx) <= half_w && std::abs(ly) <= half_h;
  }
};

inline bool point_in_obb(const ObbBox& box, double px, double py) {
  return ObbFrame(box).contains(px, py);
}

struct RasterCounts {
  long inter = 0;
  long a_only = 0;
  long b_only = 0;
  double cell_area = 0.0;
};

// Counts midpoint samples of a grid x grid lattice over the joint bounding box.
inline RasterCounts rasterize_pair(const ObbBox& a, const ObbBox& b, int grid) {
  const double ra = 0.5 * std::hypot(a.w, a.h);
  const double rb = 0.5 * std::hypot(b.w, b.h);
  const double x0 = std::min(a.cx - ra, b.cx - rb);
  const double x1 = std::max(a.cx + ra, b.cx + rb);
  const double y0 = std::min(a.cy - ra, b.cy - rb);
  const double y1 = std::max(a.cy + ra, b.cy + rb);
  const double dx = (x1 - x0) / grid;
  const double dy = (y1 - y0) / grid;

  const ObbFrame fa(a);
  const ObbFrame fb(b);
  RasterCounts counts;
  counts.cell_area = dx * dy;
  for (int iy = 0; iy < grid; ++iy) {
    const double py = y0 + (iy + 0.5) * dy;
    for (int ix = 0; ix < grid; ++ix) {
      const double px = x0 + (ix + 0.5) * dx;
      const bool in_a = fa.contains(px, py);
      const bool in_b = fb.contains(px, py);
      if (in_a && in_b) {
        ++counts.inter;
      } else if (in_a) {
        ++counts.a_only;
      } else if (in_b) {
        ++counts.b_only;
      }
    }
  }
  return counts;
}

inline double rasterized_iou(const ObbBox& a, const ObbBox& b, int grid = 1000) {
  const RasterCounts c = rasterize_pair(a, b, grid);
  const long uni = c.inter + c.a_only + c.b_only;
  return uni > 0 ? static_cast<double>(c.inter) / static_cast<double>(uni) : 0.0;
}

inline double rasterized_intersection(const ObbBox& a, const ObbBox& b, int grid = 1000) {
  const RasterCounts c = rasterize_pair(a, b, grid);
  return static_cast<double>(c.inter) * c.cell_area;
}

inline double rasterized_union(const ObbBox& a, const ObbBox& b, int grid = 1000) {
  const RasterCounts c = rasterize_pair(a, b, grid);
  return static_cast<double>(c.inter + c.a_only + c.b_only) * c.cell_area;
}

// Mod-then-shift reduction into (-pi/2, pi/2]; an independent route to the
// arctan(sin/cos) wrap.
inline double wrap_mod_shift(double delta) {
  double m = std::fmod(delta, kPi);
  if (m > kHalfPi) m -= kPi;
  if (m <= -kHalfPi) m += kPi;
  return m;
}

// Largest root of the monic quadratic r^2 - b r + c via bisection.
inline double quadratic_root_bisect(double b, double c, double hi) {
  auto f = [&](double r) { return r * r - b * r + c; };
  double lo = b / 2.0;  // vertex: f increases to the right of it
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// The three CornerNet radius cases solved by bisection instead of the closed
// form: each shipped root (b_i + sqrt(b_i^2 - 4 a_i c_i)) / 2 is the largest
// root of the monic quadratic r^2 - b_i r + a_i c_i.
inline double gaussian_radius_bisect(double h, double w, double o) {
  const double b1 = h + w;
  const double c1 = w * h * (1.0 - o) / (1.0 + o);
  const double b2 = 2.0 * (h + w);
  const double c2 = 4.0 * (1.0 - o) * w * h;
  const double b3 = -2.0 * o * (h + w);
  const double c3 = 4.0 * o * (o - 1.0) * w * h;
  const double hi = 4.0 * (h + w) + 10.0;
  const double r = std::min({quadratic_root_bisect(b1, c1, hi),
                             quadratic_root_bisect(b2, c2, hi),
                             quadratic_root_bisect(b3, c3, hi)});
  return std::max(1.0, r);
}

}  // namespace rotdet::oracle
