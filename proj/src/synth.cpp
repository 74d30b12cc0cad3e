// Copyright (c) 2026 The rotdet authors
// SPDX-License-Identifier: Apache-2.0

#include "rotdet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "rotdet/random.hpp"

namespace rotdet {

namespace {

void validate(const SceneConfig& cfg) {
  if (cfg.image_size <= 0 || cfg.image_size % 4 != 0) {
    throw std::invalid_argument("SceneConfig: image_size must be positive and divisible by 4");
  }
  if (cfg.n_images < 0) throw std::invalid_argument("SceneConfig: n_images must be >= 0");
  if (cfg.people_min < 0 || cfg.people_min > cfg.people_max) {
    throw std::invalid_argument("SceneConfig: need 0 <= people_min <= people_max");
  }
  if (!(cfg.size_min > 0.0) || cfg.size_min > cfg.size_max) {
    throw std::invalid_argument("SceneConfig: need 0 < size_min <= size_max");
  }
  if (!(cfg.aspect_min > 0.0) || !(cfg.aspect_max < 1.0) ||
      cfg.aspect_min > cfg.aspect_max) {
    throw std::invalid_argument("SceneConfig: aspect bounds must satisfy 0 < min <= max < 1");
  }
  if (cfg.center_margin < 0.0) {
    throw std::invalid_argument("SceneConfig: center_margin must be >= 0");
  }
}

void validate(const PerturbConfig& cfg) {
  if (cfg.drop_rate < 0.0 || cfg.drop_rate > 1.0) {
    throw std::invalid_argument("PerturbConfig: drop_rate must be in [0, 1]");
  }
  if (cfg.center_noise_sigma < 0.0 || cfg.size_noise_sigma < 0.0 ||
      cfg.angle_noise_sigma < 0.0 || cfg.spurious_rate < 0.0) {
    throw std::invalid_argument("PerturbConfig: sigmas and rates must be >= 0");
  }
  if (cfg.score_floor < 0.0 || cfg.score_floor > cfg.score_ceiling ||
      cfg.score_ceiling > 1.0) {
    throw std::invalid_argument("PerturbConfig: need 0 <= score_floor <= score_ceiling <= 1");
  }
}

std::string image_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "img_%05d", index);
  return buf;
}

// Radial orientation: the box's h axis (direction (-sin t, cos t)) aligned
// with the ray from the image center, reduced into [-pi/2, pi/2).
double radial_theta(double cx, double cy, double center) {
  const double dx = cx - center;
  const double dy = cy - center;
  if (std::hypot(dx, dy) < 1.0) return 0.0;  // at the center any angle works
  const double phi = std::atan2(dy, dx);
  double theta = phi - kHalfPi;
  theta = std::remainder(theta, kPi);
  if (theta >= kHalfPi) theta -= kPi;
  return theta;
}

}  // namespace

GroundTruthSet generate_scene(const SceneConfig& cfg) {
  validate(cfg);
  const double img = cfg.image_size;
  const double half_diag_max =
      0.5 * std::hypot(cfg.size_max * cfg.aspect_max, cfg.size_max);
  if (std::max(cfg.center_margin, half_diag_max) * 2.0 >= img) {
    throw std::invalid_argument(
        "SceneConfig: margin plus box size leave no room for centers");
  }

  GroundTruthSet out;
  out.images.reserve(cfg.n_images);
  for (int i = 0; i < cfg.n_images; ++i) {
    SplitMix64 rng = SplitMix64::stream(cfg.seed, static_cast<std::uint64_t>(i));
    ImageGroundTruth image;
    image.image_id = image_name(i);
    image.width = cfg.image_size;
    image.height = cfg.image_size;

    const int count = rng.uniform_int(cfg.people_min, cfg.people_max);
    image.boxes.reserve(count);
    for (int p = 0; p < count; ++p) {
      const double h = rng.uniform(cfg.size_min, cfg.size_max);
      const double w = h * rng.uniform(cfg.aspect_min, cfg.aspect_max);
      // Keeping the center a circumradius away from every border fits the box
      // for any rotation.
      const double clearance = std::max(cfg.center_margin, 0.5 * std::hypot(w, h));
      const double cx = rng.uniform(clearance, img - clearance);
      const double cy = rng.uniform(clearance, img - clearance);
      ObbBox box{cx, cy, w, h, radial_theta(cx, cy, img / 2.0)};
      image.boxes.push_back(canonicalize(box));
    }
    out.images.push_back(std::move(image));
  }
  return out;
}

std::vector<ImageDetections> perturb(const GroundTruthSet& gt, const PerturbConfig& cfg) {
  validate(cfg);
  std::vector<ImageDetections> out;
  out.reserve(gt.images.size());
  for (std::size_t i = 0; i < gt.images.size(); ++i) {
    const ImageGroundTruth& image = gt.images[i];
    SplitMix64 rng = SplitMix64::stream(cfg.seed, static_cast<std::uint64_t>(i));
    ImageDetections dets;
    dets.image_id = image.image_id;

    for (const ObbBox& box : image.boxes) {
      if (rng.next_double() < cfg.drop_rate) continue;
      ObbBox noisy = box;
      noisy.cx += cfg.center_noise_sigma * rng.normal();
      noisy.cy += cfg.center_noise_sigma * rng.normal();
      noisy.w *= std::max(0.05, 1.0 + cfg.size_noise_sigma * rng.normal());
      noisy.h *= std::max(0.05, 1.0 + cfg.size_noise_sigma * rng.normal());
      noisy.theta += cfg.angle_noise_sigma * rng.normal();
      const double score = rng.uniform(cfg.score_floor, cfg.score_ceiling);
      dets.dets.push_back({canonicalize(noisy), score});
    }

    // Expected spurious_rate false boxes: guaranteed floor plus one Bernoulli
    // draw for the fractional part.
    int spurious = static_cast<int>(std::floor(cfg.spurious_rate));
    const double frac = cfg.spurious_rate - std::floor(cfg.spurious_rate);
    if (rng.next_double() < frac) ++spurious;
    for (int s = 0; s < spurious; ++s) {
      const double h = rng.uniform(0.05, 0.15) * image.height;
      const double w = h * rng.uniform(0.3, 0.6);
      const double clearance = 0.5 * std::hypot(w, h);
      ObbBox box;
      box.cx = rng.uniform(clearance, image.width - clearance);
      box.cy = rng.uniform(clearance, image.height - clearance);
      box.w = w;
      box.h = h;
      box.theta = rng.uniform(-kHalfPi, kHalfPi);
      // Spurious boxes score strictly below every matched detection.
      dets.dets.push_back({canonicalize(box), cfg.score_floor * rng.next_double()});
    }
    out.push_back(std::move(dets));
  }
  return out;
}

}  // namespace rotdet
