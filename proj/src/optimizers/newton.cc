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

#include "guided_mppi/optimizers/newton.hpp"

#include <algorithm>
#include <cmath>

#include "guided_mppi/core/error.hpp"
#include "guided_mppi/guidance/guidance.hpp"
#include "guided_mppi/models/finite_difference.hpp"

namespace guided_mppi {

namespace {

constexpr double kNewtonHessFloor = 1e-12;
constexpr double kMinDamping = 1e-3;

}  // namespace

NewtonResult newton_reference(const Problem& problem, const Vector& x0, double tol, int max_iters) {
  if (!problem.has_gradient()) {
    throw Error(ErrorCode::kCapabilityMissing, problem.name() + " has no gradient");
  }
  if (x0.size() != problem.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "start point has wrong dimension");
  }
  NewtonResult result;
  result.x = x0;
  result.value = problem.eval(x0);
  Vector grad = problem.gradient(x0);
  result.grad_inf = grad.lpNorm<Eigen::Infinity>();

  // Levenberg-style damping: grows when the line search has to backtrack,
  // shrinks after full steps, so the iteration ends as plain Newton.
  double damping = 0.0;
  while (result.grad_inf >= tol && result.iterations < max_iters) {
    const Matrix hess = problem.has_hessian()
                            ? problem.hessian(result.x)
                            : fd_jacobian_of_gradient(
                                  [&](const Vector& x) { return problem.gradient(x); }, result.x);
    Matrix convex = convexify(hess, convexify_floor(hess, kNewtonHessFloor));
    convex.diagonal().array() += damping;
    Vector dir = -convex.llt().solve(grad);
    double slope = grad.dot(dir);
    if (!(slope < 0.0)) {
      dir = -grad;
      slope = -grad.squaredNorm();
    }

    double t = 1.0;
    Vector trial = result.x + dir;
    double trial_value = problem.eval(trial);
    while (!(trial_value <= result.value + kArmijoC * t * slope) && t > 1e-10) {
      t *= 0.5;
      trial = result.x + t * dir;
      trial_value = problem.eval(trial);
    }
    Vector trial_grad;
    if (trial_value <= result.value + kArmijoC * t * slope) {
      trial_grad = problem.gradient(trial);
      damping = t < 1.0 ? std::max(4.0 * damping, kMinDamping) : 0.25 * damping;
    } else {
      // Near the optimum the decrease falls below rounding in f; accept the
      // full step when it shrinks the gradient instead.
      trial = result.x + dir;
      trial_value = problem.eval(trial);
      if (!std::isfinite(trial_value)) break;
      trial_grad = problem.gradient(trial);
      if (!(trial_grad.lpNorm<Eigen::Infinity>() < result.grad_inf)) break;
    }
    result.x = trial;
    result.value = trial_value;
    grad = trial_grad;
    result.grad_inf = grad.lpNorm<Eigen::Infinity>();
    ++result.iterations;
  }
  result.converged = result.grad_inf < tol;
  return result;
}

}  // namespace guided_mppi
