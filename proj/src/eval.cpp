// Copyright (c) 2026 The rotdet authors
// SPDX-License-Identifier: Apache-2.0

#include "rotdet/eval.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rotdet {

std::vector<MatchEntry> match_image(const std::string& image_id,
                                    std::span<const Detection> dets,
                                    std::span<const ObbBox> gts, double iou_threshold) {
  std::vector<bool> taken(gts.size(), false);
  std::vector<MatchEntry> ledger;
  ledger.reserve(dets.size());
  for (std::size_t d = 0; d < dets.size(); ++d) {
    int best_gt = -1;
    double best_iou = 0.0;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (taken[g]) continue;
      const double iou = rotated_iou(dets[d].box, gts[g]);
      if (iou >= iou_threshold && iou > best_iou) {
        best_iou = iou;
        best_gt = static_cast<int>(g);
      }
    }
    if (best_gt >= 0) taken[best_gt] = true;
    ledger.push_back({image_id, static_cast<int>(d), best_gt,
                      best_gt >= 0 ? best_iou : 0.0, dets[d].score});
  }
  return ledger;
}

double average_precision(std::span<const MatchEntry> matches, std::size_t total_gt) {
  if (total_gt == 0) {
    throw std::invalid_argument("average_precision: no ground truth, recall undefined");
  }

  // Global ranking by descending score; ties resolved by image id then
  // per-image detection index so the reduction is deterministic.
  std::vector<const MatchEntry*> ranked;
  ranked.reserve(matches.size());
  for (const MatchEntry& m : matches) ranked.push_back(&m);
  std::sort(ranked.begin(), ranked.end(), [](const MatchEntry* a, const MatchEntry* b) {
    if (a->score != b->score) return a->score > b->score;
    if (a->image_id != b->image_id) return a->image_id < b->image_id;
    return a->det_index < b->det_index;
  });

  std::vector<double> precisions;
  std::vector<double> recalls;
  precisions.reserve(ranked.size());
  recalls.reserve(ranked.size());
  std::size_t tp = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (ranked[i]->gt_index >= 0) ++tp;
    precisions.push_back(static_cast<double>(tp) / static_cast<double>(i + 1));
    recalls.push_back(static_cast<double>(tp) / static_cast<double>(total_gt));
  }

  // Monotone envelope: precision at a recall level is the max precision at
  // any recall >= it.
  for (std::size_t i = precisions.size(); i-- > 1;) {
    precisions[i - 1] = std::max(precisions[i - 1], precisions[i]);
  }

  double sum = 0.0;
  for (int bin = 1; bin <= 100; ++bin) {
    const double r = static_cast<double>(bin) / 100.0;
    const auto it = std::lower_bound(recalls.begin(), recalls.end(), r);
    if (it != recalls.end()) {
      sum += precisions[static_cast<std::size_t>(it - recalls.begin())];
    }
  }
  return sum / 100.0;
}

EvalReport report(const GroundTruthSet& gt, std::span<const ImageDetections> detections,
                  double conf_threshold, double iou_threshold) {
  std::map<std::string, const ImageGroundTruth*> by_id;
  for (const ImageGroundTruth& img : gt.images) {
    if (!by_id.emplace(img.image_id, &img).second) {
      throw std::invalid_argument("report: duplicate ground truth image id " +
                                  img.image_id);
    }
  }

  std::vector<std::string> unknown;
  for (const ImageDetections& img : detections) {
    if (by_id.find(img.image_id) == by_id.end()) unknown.push_back(img.image_id);
  }
  if (!unknown.empty()) {
    std::ostringstream msg;
    msg << "report: detection image ids missing from ground truth:";
    for (const std::string& id : unknown) msg << " " << id;
    throw std::invalid_argument(msg.str());
  }

  std::size_t total_gt = 0;
  for (const ImageGroundTruth& img : gt.images) total_gt += img.boxes.size();

  EvalReport out;
  for (const ImageDetections& img : detections) {
    // Stable sort keeps input order across equal scores, as the matcher
    // contract requires.
    std::vector<Detection> sorted(img.dets.begin(), img.dets.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Detection& a, const Detection& b) { return a.score > b.score; });
    auto ledger = match_image(img.image_id, sorted, by_id.at(img.image_id)->boxes,
                              iou_threshold);
    out.matches.insert(out.matches.end(), ledger.begin(), ledger.end());
  }

  out.ap50 = average_precision(out.matches, total_gt);

  // The confidence-filtered detections are a score prefix of each image's
  // sorted list, so the greedy ledger restricted to them is exactly the
  // ledger of matching them alone.
  std::size_t tp = 0;
  std::size_t kept = 0;
  for (const MatchEntry& m : out.matches) {
    if (m.score >= conf_threshold) {
      ++kept;
      if (m.gt_index >= 0) ++tp;
    }
  }
  out.precision = kept > 0 ? static_cast<double>(tp) / static_cast<double>(kept) : 0.0;
  out.recall = static_cast<double>(tp) / static_cast<double>(total_gt);
  out.f1 = (out.precision + out.recall) > 0.0
               ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
               : 0.0;
  return out;
}

}  // namespace rotdet
