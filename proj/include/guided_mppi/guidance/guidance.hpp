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

#ifndef GUIDED_MPPI_GUIDANCE_GUIDANCE_HPP_
#define GUIDED_MPPI_GUIDANCE_GUIDANCE_HPP_

#include <optional>

#include "guided_mppi/core/types.hpp"
#include "guided_mppi/models/quadratic_model.hpp"

namespace guided_mppi {

struct GuidanceConfig {
  double lambda = 0.1;       // temperature
  double alpha_delta = 1.0;  // EMA factor of the guided step
  double alpha_sigma = 1.0;  // EMA factor of the guided covariance
  // Minimum variance of the guided distribution in its most compressed
  // direction; disabled when unset.
  std::optional<double> sigma_target_sq;
  // Eigenvalue floor for convexification, relative to max(1, ||H||_inf).
  double hess_floor = 1e-6;
  // Isotropic prior variance used when the target width is unreachable.
  double prior_variance_ceiling = 1e6;

  // Throws kConfigInvalid on out-of-range fields.
  void validate() const;
};

/// Eigenvalue clamping: V diag(max(k_i, floor)) V^T. Same eigenvectors,
/// positive-definite output.
Matrix convexify(const Matrix& hess, double floor);

/// Absolute floor used by the guided-prior pipeline:
/// relative_floor * max(1, ||hess||_inf).
double convexify_floor(const Matrix& hess, double relative_floor);

/// ((prior_cov)^-1 + hess / lambda)^-1 through Cholesky factors:
/// with prior_cov = L L^T it equals L (I + L^T hess L / lambda)^-1 L^T.
/// `hess` must be positive-semidefinite; kSingularSystem otherwise.
Matrix guided_covariance(const Matrix& prior_cov, const Matrix& hess, double lambda);

/// Full-iterate guided mean
///   x~ = S~ ( S^-1 x + (H x - g) / lambda )
/// with S the prior covariance and S~ the guided covariance.
/// kCenterMismatch unless the model was expanded at prior.mean().
Vector guided_mean(const GaussianParams& prior, const Matrix& guided_cov,
                   const QuadraticModel& model, double lambda);

struct GuidedStep {
  Vector delta;
  Matrix cov;
};

/// Incremental form around the model center:
///   cov   = (S0^-1 + H / lambda)^-1
///   delta = -(lambda S0^-1 + H)^-1 g
GuidedStep guided_step(const Matrix& prior_cov, const QuadraticModel& model, double lambda);

// Exponential moving averages of the guided step and covariance.
struct EmaState {
  Vector delta;
  Matrix cov;
};

/// First call (no previous state) returns the raw values.
EmaState ema_smooth(const std::optional<EmaState>& previous, const Vector& new_delta,
                    const Matrix& new_cov, const GuidanceConfig& cfg);

/// Smallest isotropic prior variance s such that
///   lambda s / (lambda + s kappa_max) >= sigma_target_sq.
/// Returns sigma_target_sq when kappa_max <= 0 and throws kFloorInfeasible
/// when lambda <= sigma_target_sq * kappa_max.
double variance_floor(double lambda, double sigma_target_sq, double kappa_max);

struct GuidedPrior {
  Vector mean;
  Matrix cov;
  EmaState ema;
  Matrix prior_cov_used;          // S0 after any variance-floor rescaling
  bool floor_applied = false;     // isotropic prior inflated to the bound
  bool floor_infeasible = false;  // bound unreachable, ceiling used
  bool floor_clamped = false;     // anisotropic prior, eigenvalues clamped
};

/// Incremental pipeline: convexify -> variance floor -> guided_step ->
/// ema_smooth; mean = prior.mean + ema.delta, cov = ema.cov.
GuidedPrior build_guided_prior(const GaussianParams& prior, const QuadraticModel& model,
                               const GuidanceConfig& cfg,
                               const std::optional<EmaState>& previous);

/// Full-iterate pipeline: convexify -> variance floor -> guided_covariance
/// and guided_mean. No moving average.
GuidedPrior build_guided_prior_full(const GaussianParams& prior, const QuadraticModel& model,
                                    const GuidanceConfig& cfg);

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_GUIDANCE_GUIDANCE_HPP_
