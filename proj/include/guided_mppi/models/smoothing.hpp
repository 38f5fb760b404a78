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

#ifndef GUIDED_MPPI_MODELS_SMOOTHING_HPP_
#define GUIDED_MPPI_MODELS_SMOOTHING_HPP_

#include <vector>

#include "guided_mppi/core/random.hpp"
#include "guided_mppi/core/types.hpp"
#include "guided_mppi/models/problem.hpp"
#include "guided_mppi/models/quadratic_model.hpp"

namespace guided_mppi {

struct SigmaStage {
  int from_iteration = 0;
  double sigma = 1.0;
};

// Gaussian randomized-smoothing settings. `schedule` switches the kernel
// scale at the given iteration thresholds (coarse to fine).
struct SmoothingConfig {
  double sigma = 0.1;
  int num_samples = 8;
  std::vector<SigmaStage> schedule;

  // Throws kConfigInvalid unless sigma > 0, num_samples >= 2, and the
  // schedule has positive sigmas with strictly increasing thresholds.
  void validate() const;

  // Kernel scale in effect at `iteration`.
  double sigma_at(int iteration) const;
};

struct SmoothedEstimate {
  Vector grad;
  Matrix hess;
  long evaluations = 0;  // f calls made, excluding the value at x
};

/// Stein-identity estimators of the gradient and Hessian of the Gaussian
/// smoothed surrogate, sharing one set of M draws z_j ~ N(0, sigma^2 I):
///   g = 1/(M sigma^2) sum (f(x + z_j) - f(x)) z_j
///   H = 1/(M sigma^4) sum (f(x + z_j) - f(x)) (z_j z_j^T - sigma^2 I)
/// `fx` is f(x). Reduction is sequential in j, so results are reproducible
/// per stream. A NaN objective value raises kEstimatorFailure.
SmoothedEstimate rs_estimate(const Problem& problem, const Vector& x, double fx, double sigma,
                             int num_samples, Rng& rng);

Vector rs_gradient(const Problem& problem, const Vector& x, const SmoothingConfig& cfg, Rng& rng);
Matrix rs_hessian(const Problem& problem, const Vector& x, const SmoothingConfig& cfg, Rng& rng);

/// Quadratic model from a shared draw set; M + 1 evaluations including f(x).
/// The kernel scale follows cfg.schedule at `iteration`.
QuadraticModel rs_model(const Problem& problem, const Vector& x, const SmoothingConfig& cfg,
                        Rng& rng, int iteration = 0);

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_MODELS_SMOOTHING_HPP_
