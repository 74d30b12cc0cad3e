// Copyright (c) 2026 The rotdet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rotdet/codec.hpp"
#include "rotdet/tensor.hpp"

namespace rotdet {

struct LossWeights {
  double lambda_size = 0.1;
  double lambda_off = 1.0;
  double lambda_angle = 0.1;
};

struct FocalParams {
  double alpha = 2.0;
  double beta = 4.0;
};

enum class AngleLossKind {
  kPlainL1,           // |theta_hat - theta|, no wrapping
  kPeriodicL1,        // |wrap(theta_hat - theta)|
  kSmoothPeriodicL1,  // smooth L1 of the wrapped difference (default)
};

// Parametrization of the decoded angle as a function of the raw head output.
enum class RangeMode {
  kHalfPi,     // theta_hat = (pi/2) * tanh(t)
  kPi,         // theta_hat = pi * tanh(t)      (default)
  kUnbounded,  // theta_hat = t
};

// Predictions are clamped into [kHeatmapClamp, 1 - kHeatmapClamp] before the
// focal-loss logs; the clamp saturates the gradient outside that band.
inline constexpr double kHeatmapClamp = 1e-6;

struct ScalarWithGrad {
  double value = 0.0;
  Tensor grad;  // d value / d prediction, same shape as the prediction
};

struct LossBreakdown {
  double l_k = 0.0;
  double l_off = 0.0;
  double l_size = 0.0;
  double l_angle = 0.0;
  double total = 0.0;  // l_k + lambda_size*l_size + lambda_off*l_off + lambda_angle*l_angle
  Tensor grad_heatmap;
  Tensor grad_offset;
  Tensor grad_size;
  Tensor grad_orientation;  // with respect to the raw head output t_theta
};

// Penalty-reduced pixel-wise focal loss over the heatmap, normalized by
// max(n_objects, 1). Cells with target exactly 1 are positives.
ScalarWithGrad focal_loss(const Tensor& pred_heatmap, const Tensor& target_heatmap,
                          const FocalParams& params, int n_objects);

// Mean L1 over both components at the N center cells; all other cells have
// zero gradient.
ScalarWithGrad offset_loss(const Tensor& pred_offsets, const Tensor& target_offsets,
                           std::span<const CellIndex> centers);

ScalarWithGrad size_loss(const Tensor& pred_sizes, const Tensor& target_sizes,
                         std::span<const CellIndex> centers);

// Angle loss over decoded radians at the N center cells. The periodic kinds
// reduce the difference with wrap_angle_delta and zero the gradient at the
// wrap singularity.
ScalarWithGrad angle_loss(const Tensor& pred_angles, const Tensor& target_angles,
                          std::span<const CellIndex> centers, AngleLossKind kind);

// Full training objective with gradients of the weighted total with respect
// to each prediction map. The prediction orientation channel holds the raw
// t_theta; the angle term chains through theta_hat = pi * tanh(t).
LossBreakdown total_loss(const DenseMaps& pred, const EncodedTargets& targets,
                         const LossWeights& weights, const FocalParams& focal_params,
                         AngleLossKind kind);

double decode_angle_in_range(double t, RangeMode mode);
double decode_angle_in_range_deriv(double t, RangeMode mode);

// Max over coordinates of |analytic - central difference| / max(1, |analytic|).
double finite_difference_check(const std::function<double(std::span<const double>)>& loss,
                               std::span<const double> point,
                               std::span<const double> analytic_grad, double epsilon);

struct FitStep {
  double t = 0.0;
  double theta_hat = 0.0;
  double loss = 0.0;
};

// Fixed-step gradient descent of a single angle prediction against the chosen
// loss and parametrization. Entry 0 is the initial state, one entry per step
// after it.
std::vector<FitStep> fit_angle(double target_theta, double t_init, RangeMode range_mode,
                               AngleLossKind kind, double learning_rate, int steps);

}  // namespace rotdet
