// Copyright (c) 2026 The rotdet authors
// SPDX-License-Identifier: Apache-2.0

#include "rotdet/codec.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rotdet {

double gaussian_radius(double box_h, double box_w, double min_overlap) {
  if (!(box_h > 0.0) || !(box_w > 0.0)) {
    throw std::invalid_argument("gaussian_radius: box dims must be positive");
  }
  if (!(min_overlap > 0.0 && min_overlap < 1.0)) {
    throw std::invalid_argument("gaussian_radius: min_overlap must be in (0, 1)");
  }

  // Case 1: shifted box, one corner inside.
  const double b1 = box_h + box_w;
  const double c1 = box_w * box_h * (1.0 - min_overlap) / (1.0 + min_overlap);
  const double sq1 = std::sqrt(b1 * b1 - 4.0 * c1);
  const double r1 = (b1 + sq1) / 2.0;

  // Case 2: both boxes shrunk.
  const double b2 = 2.0 * (box_h + box_w);
  const double c2 = (1.0 - min_overlap) * box_w * box_h;
  const double sq2 = std::sqrt(b2 * b2 - 16.0 * c2);
  const double r2 = (b2 + sq2) / 2.0;

  // Case 3: both boxes grown.
  const double a3 = 4.0 * min_overlap;
  const double b3 = -2.0 * min_overlap * (box_h + box_w);
  const double c3 = (min_overlap - 1.0) * box_w * box_h;
  const double sq3 = std::sqrt(b3 * b3 - 4.0 * a3 * c3);
  const double r3 = (b3 + sq3) / 2.0;

  return std::max(1.0, std::min({r1, r2, r3}));
}

void splat_gaussian(Tensor& heatmap, CellIndex center, double sigma, int channel) {
  if (center.x < 0 || center.x >= heatmap.width() || center.y < 0 ||
      center.y >= heatmap.height()) {
    std::ostringstream msg;
    msg << "splat_gaussian: center (" << center.x << ", " << center.y
        << ") outside map " << heatmap.width() << "x" << heatmap.height();
    throw std::out_of_range(msg.str());
  }
  if (!(sigma > 0.0)) throw std::invalid_argument("splat_gaussian: sigma must be > 0");

  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  const int x0 = std::max(0, center.x - radius);
  const int x1 = std::min(heatmap.width() - 1, center.x + radius);
  const int y0 = std::max(0, center.y - radius);
  const int y1 = std::min(heatmap.height() - 1, center.y + radius);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double dx = x - center.x;
      const double dy = y - center.y;
      const double v = std::exp(-(dx * dx + dy * dy) * inv);
      double& cell = heatmap.at(y, x, channel);
      if (v > cell) cell = v;
    }
  }
}

EncodedTargets encode_targets(std::span<const ObbBox> annotations, int image_w,
                              int image_h, int stride) {
  if (stride <= 0) throw std::invalid_argument("encode_targets: stride must be > 0");
  if (image_w <= 0 || image_h <= 0 || image_w % stride != 0 || image_h % stride != 0) {
    std::ostringstream msg;
    msg << "encode_targets: image " << image_w << "x" << image_h
        << " not divisible by stride " << stride;
    throw std::invalid_argument(msg.str());
  }

  const int out_w = image_w / stride;
  const int out_h = image_h / stride;
  EncodedTargets enc;
  enc.maps.stride = stride;
  enc.maps.heatmap = Tensor(out_h, out_w, 1);
  enc.maps.offset = Tensor(out_h, out_w, 2);
  enc.maps.size = Tensor(out_h, out_w, 2);
  enc.maps.orientation = Tensor(out_h, out_w, 1);

  std::vector<std::size_t> outside;
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const ObbBox& b = annotations[i];
    if (!(b.cx >= 0.0 && b.cx < image_w && b.cy >= 0.0 && b.cy < image_h)) {
      outside.push_back(i);
    }
  }
  if (!outside.empty()) {
    std::ostringstream msg;
    msg << "encode_targets: center outside image for annotation index";
    for (std::size_t i : outside) msg << " " << i;
    throw std::invalid_argument(msg.str());
  }

  for (const ObbBox& raw : annotations) {
    const ObbBox box = canonicalize(raw);
    const double fx = box.cx / stride;
    const double fy = box.cy / stride;
    const int cx = static_cast<int>(std::floor(fx));
    const int cy = static_cast<int>(std::floor(fy));
    enc.centers.push_back({cx, cy});

    const double radius = gaussian_radius(box.h / stride, box.w / stride,
                                          kDefaultMinOverlap);
    splat_gaussian(enc.maps.heatmap, {cx, cy}, radius / 3.0);

    enc.maps.offset.at(cy, cx, 0) = fx - cx;
    enc.maps.offset.at(cy, cx, 1) = fy - cy;
    enc.maps.size.at(cy, cx, 0) = box.w;
    enc.maps.size.at(cy, cx, 1) = box.h;
    enc.maps.orientation.at(cy, cx, 0) = box.theta;
  }
  enc.object_count = static_cast<int>(annotations.size());
  return enc;
}

double decode_angle(double t_theta) { return kPi * std::tanh(t_theta); }

std::vector<Peak> extract_peaks(const Tensor& heatmap, double conf_threshold,
                                int top_k, int channel) {
  std::vector<Peak> peaks;
  if (top_k <= 0) return peaks;
  const int h = heatmap.height();
  const int w = heatmap.width();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = heatmap.at(y, x, channel);
      if (v < conf_threshold) continue;
      bool is_peak = true;
      for (int dy = -1; dy <= 1 && is_peak; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int ny = y + dy;
          const int nx = x + dx;
          if (ny < 0 || ny >= h || nx < 0 || nx >= w) continue;
          if (heatmap.at(ny, nx, channel) > v) {
            is_peak = false;
            break;
          }
        }
      }
      if (is_peak) peaks.push_back({{x, y}, v});
    }
  }
  // Row-major scan order makes the stable sort break score ties by lowest
  // row-major index.
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& a, const Peak& b) { return a.score > b.score; });
  if (peaks.size() > static_cast<std::size_t>(top_k)) peaks.resize(top_k);
  return peaks;
}

std::vector<Detection> decode_detections(const DenseMaps& maps, double conf_threshold,
                                         int top_k) {
  std::vector<Detection> dets;
  for (const Peak& p : extract_peaks(maps.heatmap, conf_threshold, top_k)) {
    const int x = p.cell.x;
    const int y = p.cell.y;
    const double w = maps.size.at(y, x, 0);
    const double h = maps.size.at(y, x, 1);
    if (!(w > 0.0) || !(h > 0.0) || !std::isfinite(w) || !std::isfinite(h)) {
      continue;  // a head can emit junk sizes at low-score peaks
    }
    ObbBox box;
    box.cx = (x + maps.offset.at(y, x, 0)) * maps.stride;
    box.cy = (y + maps.offset.at(y, x, 1)) * maps.stride;
    box.w = w;
    box.h = h;
    box.theta = decode_angle(maps.orientation.at(y, x, 0));
    dets.push_back({canonicalize(box), p.score});
  }
  return dets;
}

}  // namespace rotdet
