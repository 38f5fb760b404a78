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

#ifndef GUIDED_MPPI_OPTIMIZERS_NEWTON_HPP_
#define GUIDED_MPPI_OPTIMIZERS_NEWTON_HPP_

#include "guided_mppi/core/types.hpp"
#include "guided_mppi/models/problem.hpp"

namespace guided_mppi {

struct NewtonResult {
  Vector x;
  double value = 0.0;
  double grad_inf = 0.0;
  int iterations = 0;
  bool converged = false;
};

inline constexpr double kArmijoC = 1e-4;

/// Damped Newton with convexified Hessian, adaptive diagonal damping, and
/// halving Armijo backtracking.
/// Falls back to finite differences of the gradient when the problem has no
/// Hessian. Stops once ||grad||_inf < tol; otherwise returns the best iterate
/// with converged = false.
NewtonResult newton_reference(const Problem& problem, const Vector& x0, double tol = 1e-8,
                              int max_iters = 100);

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_OPTIMIZERS_NEWTON_HPP_
