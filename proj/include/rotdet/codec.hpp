// Copyright (c) 2026 The rotdet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "rotdet/geometry.hpp"
#include "rotdet/tensor.hpp"

namespace rotdet {

// The four per-pixel output channels at output resolution (input / stride).
// For targets the orientation channel holds the canonical angle; for
// predictions it holds the raw head output t_theta.
struct DenseMaps {
  int stride = 4;
  Tensor heatmap;      // [H/s, W/s, C], C = 1 for person detection
  Tensor offset;       // [H/s, W/s, 2], cell fractions for targets
  Tensor size;         // [H/s, W/s, 2], input-resolution pixels
  Tensor orientation;  // [H/s, W/s, 1]

  int width_out() const { return heatmap.width(); }
  int height_out() const { return heatmap.height(); }
};

struct CellIndex {
  int x = 0;
  int y = 0;
};

struct EncodedTargets {
  DenseMaps maps;
  std::vector<CellIndex> centers;  // one low-res cell per object, input order
  int object_count = 0;
};

struct Detection {
  ObbBox box;
  double score = 0.0;
};

inline constexpr double kDefaultMinOverlap = 0.7;
inline constexpr double kDefaultConfThreshold = 0.3;
inline constexpr int kDefaultTopK = 100;

// CornerNet-style size-adaptive radius: the smallest of the three quadratic
// root cases at the requested overlap, never below 1.
double gaussian_radius(double box_h, double box_w, double min_overlap);

// Max-combines exp(-(dx^2+dy^2)/(2 sigma^2)) into the heatmap around the
// center cell; the center itself becomes exactly 1. Splats are truncated at
// the map edges, not renormalized. Throws on an out-of-bounds center.
void splat_gaussian(Tensor& heatmap, CellIndex center, double sigma, int channel = 0);

// Builds the four target maps plus the center ledger for one image. When two
// centers land in the same cell the later annotation overwrites the
// regression channels and the heatmap keeps the element-wise max.
EncodedTargets encode_targets(std::span<const ObbBox> annotations, int image_w,
                              int image_h, int stride = 4);

// theta_hat = pi * tanh(t), strictly increasing, range (-pi, pi).
double decode_angle(double t_theta);

struct Peak {
  CellIndex cell;
  double score = 0.0;
};

// Cells >= all 8 neighbors with score >= conf_threshold, sorted by descending
// score (ties by lowest row-major index), truncated to top_k.
std::vector<Peak> extract_peaks(const Tensor& heatmap, double conf_threshold,
                                int top_k, int channel = 0);

// Reads peaks off prediction maps and assembles canonical scored boxes.
// Scores are the raw heatmap values; no rescoring, no NMS.
std::vector<Detection> decode_detections(const DenseMaps& maps, double conf_threshold,
                                         int top_k);

}  // namespace rotdet
