// Copyright (c) 2026 The rotdet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "rotdet/eval.hpp"

namespace rotdet {

// Overhead-fisheye style scene: boxes whose h axis points along the ray from
// the image center, mimicking standing people seen from a ceiling camera.
struct SceneConfig {
  std::uint64_t seed = 0;
  int image_size = 512;  // square, divisible by the stride of 4
  int n_images = 1;
  int people_min = 1;
  int people_max = 5;
  double size_min = 40.0;  // h in pixels
  double size_max = 90.0;
  double aspect_min = 0.35;  // w/h, within (0, 1)
  double aspect_max = 0.60;
  double center_margin = 16.0;  // min distance of a center from the border
};

struct PerturbConfig {
  std::uint64_t seed = 0;
  double center_noise_sigma = 0.0;  // pixels
  double size_noise_sigma = 0.0;    // relative
  double angle_noise_sigma = 0.0;   // radians
  double drop_rate = 0.0;
  double spurious_rate = 0.0;  // expected false boxes per image
  double score_floor = 0.5;    // matched detections draw scores in
  double score_ceiling = 1.0;  // [floor, ceiling)
};

// Deterministic for a fixed config; image k draws from stream(seed, k).
// Throws std::invalid_argument on an invalid or infeasible config.
GroundTruthSet generate_scene(const SceneConfig& cfg);

// Degrades ground truth into pseudo-detections: per-box Gaussian noise on
// center/size/angle, seeded drops, spurious boxes (scores below score_floor),
// and a seeded score per kept box. Image k draws from stream(seed, k) with k
// the position in the id-ordered set.
std::vector<ImageDetections> perturb(const GroundTruthSet& gt, const PerturbConfig& cfg);

}  // namespace rotdet
