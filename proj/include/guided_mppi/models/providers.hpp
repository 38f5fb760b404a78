// Copyright 2026 The Guided MPPI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GUIDED_MPPI_MODELS_PROVIDERS_HPP_
#define GUIDED_MPPI_MODELS_PROVIDERS_HPP_

#include <utility>

#include "guided_mppi/core/types.hpp"
#include "guided_mppi/models/problem.hpp"
#include "guided_mppi/models/quadratic_model.hpp"

namespace guided_mppi {

/// Analytical gradient and Hessian of `problem` at x. Requires both
/// capabilities (kCapabilityMissing otherwise). The first overload evaluates
/// f(x); the second reuses a known value.
QuadraticModel exact_model(const Problem& problem, const Vector& x);
QuadraticModel exact_model(const Problem& problem, const Vector& x, double value);

/// grad = J^T R, hess = J^T J from the residual capability.
QuadraticModel gauss_newton_model(const Problem& problem, const Vector& x);
QuadraticModel gauss_newton_model(const Problem& problem, const Vector& x, double value);

/// Central finite differences: of the analytic gradient when available,
/// otherwise of f. Adds the number of f evaluations spent to *evaluations.
QuadraticModel finite_difference_model(const Problem& problem, const Vector& x, double value,
                                       long* evaluations = nullptr);

inline constexpr double kBfgsCurvatureThreshold = 1e-10;

/// Direct (not inverse) BFGS update of a Hessian approximation. Returns
/// prev_hess unchanged when s^T y <= 1e-10 * ||s|| * ||y||.
Matrix bfgs_update(const Matrix& prev_hess, const Vector& s, const Vector& y);

struct BfgsState {
  Matrix hess;  // empty until the first model is built
  Vector prev_x;
  Vector prev_grad;
  int updates = 0;
};

struct BfgsOptions {
  // Replace the initial identity scaling by (y^T y / s^T y) I before the
  // first accepted update.
  bool rescale_on_first_update = true;
};

/// Quasi-Newton model at x from the gradient history in `state`. The first
/// call seeds the approximation with clamp(||g0|| / ||x0||, 1e-3, 1e3) * I.
std::pair<QuadraticModel, BfgsState> bfgs_model(const Problem& problem, const Vector& x,
                                                double value, const BfgsState& state,
                                                const BfgsOptions& options = {});

struct AdamState {
  Vector second_moment;  // empty until the first call
  int step = 0;
};

inline constexpr double kAdamEpsilon = 1e-8;

/// Diagonal curvature from Adam's bias-corrected second moment:
/// hess = diag(sqrt(v_hat) + eps). The gradient passes through unchanged.
std::pair<QuadraticModel, AdamState> adam_diag_model(const AdamState& state, const Vector& x,
                                                     double value, const Vector& grad,
                                                     double beta2 = 0.999,
                                                     double eps = kAdamEpsilon);

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_MODELS_PROVIDERS_HPP_
