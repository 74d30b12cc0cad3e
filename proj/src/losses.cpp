// Copyright (c) 2026 The rotdet authors
// SPDX-License-Identifier: Apache-2.0

#include "rotdet/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rotdet/geometry.hpp"

namespace rotdet {

namespace {

void require_same_shape(const Tensor& a, const Tensor& b, const char* what) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string(what) + ": prediction/target shape mismatch");
  }
}

void require_centers_in_bounds(const Tensor& t, std::span<const CellIndex> centers,
                               const char* what) {
  for (const CellIndex& c : centers) {
    if (c.x < 0 || c.x >= t.width() || c.y < 0 || c.y >= t.height()) {
      throw std::out_of_range(std::string(what) + ": center cell out of bounds");
    }
  }
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Smooth L1 of the (already wrapped) difference and its derivative.
double smooth_l1(double d, double* deriv) {
  if (std::abs(d) >= 1.0) {
    *deriv = sign(d);
    return std::abs(d) - 0.5;
  }
  *deriv = d;
  return 0.5 * d * d;
}

// Per-object angle penalty for one prediction/target pair.
double angle_term(double pred, double target, AngleLossKind kind, double* dpred) {
  switch (kind) {
    case AngleLossKind::kPlainL1: {
      const double d = pred - target;
      *dpred = sign(d);
      return std::abs(d);
    }
    case AngleLossKind::kPeriodicL1: {
      const double d = wrap_angle_delta(pred - target);
      // The wrap has unit slope except at the singularity, where the angle is
      // ignored during backpropagation.
      *dpred = (d == kHalfPi) ? 0.0 : sign(d);
      return std::abs(d);
    }
    case AngleLossKind::kSmoothPeriodicL1: {
      const double d = wrap_angle_delta(pred - target);
      double deriv = 0.0;
      const double v = smooth_l1(d, &deriv);
      *dpred = (d == kHalfPi) ? 0.0 : deriv;
      return v;
    }
  }
  throw std::logic_error("angle_term: unknown kind");
}

// Shared core of the two center-cell L1 regressions.
ScalarWithGrad l1_at_centers(const Tensor& pred, const Tensor& target,
                             std::span<const CellIndex> centers, const char* what) {
  require_same_shape(pred, target, what);
  require_centers_in_bounds(pred, centers, what);

  ScalarWithGrad out;
  out.grad = Tensor(pred.height(), pred.width(), pred.channels());
  if (centers.empty()) return out;

  const double inv_n = 1.0 / static_cast<double>(centers.size());
  double sum = 0.0;
  for (const CellIndex& c : centers) {
    for (int ch = 0; ch < pred.channels(); ++ch) {
      const double diff = pred.at(c.y, c.x, ch) - target.at(c.y, c.x, ch);
      sum += std::abs(diff);
      out.grad.at(c.y, c.x, ch) += inv_n * sign(diff);
    }
  }
  out.value = sum * inv_n;
  return out;
}

}  // namespace

ScalarWithGrad focal_loss(const Tensor& pred_heatmap, const Tensor& target_heatmap,
                          const FocalParams& params, int n_objects) {
  require_same_shape(pred_heatmap, target_heatmap, "focal_loss");
  if (!(params.alpha > 0.0) || !(params.beta > 0.0)) {
    throw std::invalid_argument("focal_loss: alpha and beta must be > 0");
  }

  const double lo = kHeatmapClamp;
  const double hi = 1.0 - kHeatmapClamp;
  const double inv_n = 1.0 / std::max(n_objects, 1);

  ScalarWithGrad out;
  out.grad = Tensor(pred_heatmap.height(), pred_heatmap.width(), pred_heatmap.channels());
  double sum = 0.0;
  for (std::size_t i = 0; i < pred_heatmap.size(); ++i) {
    const double raw = pred_heatmap.data()[i];
    const double k = std::clamp(raw, lo, hi);
    const double target = target_heatmap.data()[i];
    double cell = 0.0;
    double dcell = 0.0;
    if (target == 1.0) {
      const double u = 1.0 - k;
      const double pow_u = std::pow(u, params.alpha);
      cell = -pow_u * std::log(k);
      dcell = params.alpha * std::pow(u, params.alpha - 1.0) * std::log(k) - pow_u / k;
    } else {
      const double pow_t = std::pow(1.0 - target, params.beta);
      const double pow_k = std::pow(k, params.alpha);
      cell = -pow_t * pow_k * std::log(1.0 - k);
      dcell = pow_t * (pow_k / (1.0 - k) -
                       params.alpha * std::pow(k, params.alpha - 1.0) * std::log(1.0 - k));
    }
    sum += cell;
    // Clamp saturation: no gradient once the raw prediction leaves the band.
    out.grad.data()[i] = (raw > lo && raw < hi) ? inv_n * dcell : 0.0;
  }
  out.value = sum * inv_n;
  return out;
}

ScalarWithGrad offset_loss(const Tensor& pred_offsets, const Tensor& target_offsets,
                           std::span<const CellIndex> centers) {
  return l1_at_centers(pred_offsets, target_offsets, centers, "offset_loss");
}

ScalarWithGrad size_loss(const Tensor& pred_sizes, const Tensor& target_sizes,
                         std::span<const CellIndex> centers) {
  return l1_at_centers(pred_sizes, target_sizes, centers, "size_loss");
}

ScalarWithGrad angle_loss(const Tensor& pred_angles, const Tensor& target_angles,
                          std::span<const CellIndex> centers, AngleLossKind kind) {
  require_same_shape(pred_angles, target_angles, "angle_loss");
  require_centers_in_bounds(pred_angles, centers, "angle_loss");

  ScalarWithGrad out;
  out.grad = Tensor(pred_angles.height(), pred_angles.width(), pred_angles.channels());
  if (centers.empty()) return out;

  const double inv_n = 1.0 / static_cast<double>(centers.size());
  double sum = 0.0;
  for (const CellIndex& c : centers) {
    double dpred = 0.0;
    sum += angle_term(pred_angles.at(c.y, c.x, 0), target_angles.at(c.y, c.x, 0), kind,
                      &dpred);
    out.grad.at(c.y, c.x, 0) += inv_n * dpred;
  }
  out.value = sum * inv_n;
  return out;
}

LossBreakdown total_loss(const DenseMaps& pred, const EncodedTargets& targets,
                         const LossWeights& weights, const FocalParams& focal_params,
                         AngleLossKind kind) {
  const DenseMaps& tgt = targets.maps;
  require_same_shape(pred.heatmap, tgt.heatmap, "total_loss heatmap");
  require_same_shape(pred.offset, tgt.offset, "total_loss offset");
  require_same_shape(pred.size, tgt.size, "total_loss size");
  require_same_shape(pred.orientation, tgt.orientation, "total_loss orientation");

  auto focal = focal_loss(pred.heatmap, tgt.heatmap, focal_params, targets.object_count);
  auto off = offset_loss(pred.offset, tgt.offset, targets.centers);
  auto sz = size_loss(pred.size, tgt.size, targets.centers);

  // Decode the raw orientation head before the angle loss; the gradient
  // chains back through d theta_hat / d t = pi * (1 - tanh^2 t).
  Tensor decoded(pred.orientation.height(), pred.orientation.width(), 1);
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    decoded.data()[i] = decode_angle(pred.orientation.data()[i]);
  }
  auto ang = angle_loss(decoded, tgt.orientation, targets.centers, kind);

  LossBreakdown out;
  out.l_k = focal.value;
  out.l_off = off.value;
  out.l_size = sz.value;
  out.l_angle = ang.value;
  out.total = out.l_k + weights.lambda_size * out.l_size + weights.lambda_off * out.l_off +
              weights.lambda_angle * out.l_angle;

  out.grad_heatmap = std::move(focal.grad);
  out.grad_offset = std::move(off.grad);
  out.grad_size = std::move(sz.grad);
  for (double& g : out.grad_offset.data()) g *= weights.lambda_off;
  for (double& g : out.grad_size.data()) g *= weights.lambda_size;
  out.grad_orientation = Tensor(pred.orientation.height(), pred.orientation.width(), 1);
  for (std::size_t i = 0; i < out.grad_orientation.size(); ++i) {
    const double th = std::tanh(pred.orientation.data()[i]);
    out.grad_orientation.data()[i] =
        weights.lambda_angle * ang.grad.data()[i] * kPi * (1.0 - th * th);
  }
  return out;
}

double decode_angle_in_range(double t, RangeMode mode) {
  switch (mode) {
    case RangeMode::kHalfPi:
      return kHalfPi * std::tanh(t);
    case RangeMode::kPi:
      return kPi * std::tanh(t);
    case RangeMode::kUnbounded:
      return t;
  }
  throw std::logic_error("decode_angle_in_range: unknown mode");
}

double decode_angle_in_range_deriv(double t, RangeMode mode) {
  switch (mode) {
    case RangeMode::kHalfPi: {
      const double th = std::tanh(t);
      return kHalfPi * (1.0 - th * th);
    }
    case RangeMode::kPi: {
      const double th = std::tanh(t);
      return kPi * (1.0 - th * th);
    }
    case RangeMode::kUnbounded:
      return 1.0;
  }
  throw std::logic_error("decode_angle_in_range_deriv: unknown mode");
}

double finite_difference_check(const std::function<double(std::span<const double>)>& loss,
                               std::span<const double> point,
                               std::span<const double> analytic_grad, double epsilon) {
  if (point.size() != analytic_grad.size()) {
    throw std::invalid_argument("finite_difference_check: size mismatch");
  }
  std::vector<double> x(point.begin(), point.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + epsilon;
    const double up = loss(x);
    x[i] = saved - epsilon;
    const double down = loss(x);
    x[i] = saved;
    const double fd = (up - down) / (2.0 * epsilon);
    const double err = std::abs(analytic_grad[i] - fd) /
                       std::max(1.0, std::abs(analytic_grad[i]));
    worst = std::max(worst, err);
  }
  return worst;
}

std::vector<FitStep> fit_angle(double target_theta, double t_init, RangeMode range_mode,
                               AngleLossKind kind, double learning_rate, int steps) {
  if (steps < 1) throw std::invalid_argument("fit_angle: steps must be >= 1");
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("fit_angle: learning rate must be > 0");
  }

  std::vector<FitStep> trajectory;
  trajectory.reserve(steps + 1);
  double t = t_init;
  for (int step = 0; step <= steps; ++step) {
    const double theta_hat = decode_angle_in_range(t, range_mode);
    double dpred = 0.0;
    const double loss = angle_term(theta_hat, target_theta, kind, &dpred);
    trajectory.push_back({t, theta_hat, loss});
    if (step == steps) break;
    t -= learning_rate * dpred * decode_angle_in_range_deriv(t, range_mode);
  }
  return trajectory;
}

}  // namespace rotdet
