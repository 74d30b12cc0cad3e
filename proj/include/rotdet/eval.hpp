// Copyright (c) 2026 The rotdet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "rotdet/codec.hpp"
#include "rotdet/geometry.hpp"

namespace rotdet {

struct ImageGroundTruth {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::vector<ObbBox> boxes;  // canonical
};

// Per-image ground truth, ordered by image id, ids unique.
struct GroundTruthSet {
  std::vector<ImageGroundTruth> images;
};

struct ImageDetections {
  std::string image_id;
  std::vector<Detection> dets;
};

// One ledger row per detection. gt_index is -1 for false positives.
struct MatchEntry {
  std::string image_id;
  int det_index = 0;
  int gt_index = -1;
  double iou = 0.0;
  double score = 0.0;
};

struct EvalReport {
  double ap50 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<MatchEntry> matches;
};

inline constexpr double kDefaultIouThreshold = 0.5;

// Greedy matcher: detections in descending score order each take the
// unmatched ground truth with the highest rotated IoU >= threshold (ties by
// lowest gt index). Detections must already be sorted by descending score.
std::vector<MatchEntry> match_image(const std::string& image_id,
                                    std::span<const Detection> dets,
                                    std::span<const ObbBox> gts, double iou_threshold);

// Interpolated average precision over the 101-point recall grid
// 0.00, 0.01, ..., 1.00: each of the 100 bins scores the max precision at any
// achieved recall >= its upper edge. Throws when total_gt is zero.
double average_precision(std::span<const MatchEntry> matches, std::size_t total_gt);

// Full evaluation: AP over all detections, precision/recall/F1 over the
// subset with score >= conf_threshold. Every detection image id must exist in
// the ground truth set.
EvalReport report(const GroundTruthSet& gt, std::span<const ImageDetections> detections,
                  double conf_threshold, double iou_threshold);

}  // namespace rotdet
