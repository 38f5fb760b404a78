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

#include "guided_mppi/models/providers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "guided_mppi/core/error.hpp"
#include "guided_mppi/models/finite_difference.hpp"

namespace guided_mppi {

QuadraticModel exact_model(const Problem& problem, const Vector& x) {
  return exact_model(problem, x, problem.eval(x));
}

QuadraticModel exact_model(const Problem& problem, const Vector& x, double value) {
  if (!problem.has_gradient() || !problem.has_hessian()) {
    throw Error(ErrorCode::kCapabilityMissing,
                problem.name() + " lacks analytical gradient/Hessian");
  }
  return QuadraticModel(x, value, problem.gradient(x), problem.hessian(x));
}

QuadraticModel gauss_newton_model(const Problem& problem, const Vector& x) {
  if (!problem.has_residual()) {
    throw Error(ErrorCode::kCapabilityMissing, problem.name() + " lacks a residual");
  }
  const Vector r = problem.residual(x);
  const Matrix j = problem.jacobian(x);
  return QuadraticModel(x, 0.5 * r.squaredNorm(), j.transpose() * r, j.transpose() * j);
}

QuadraticModel gauss_newton_model(const Problem& problem, const Vector& x, double value) {
  if (!problem.has_residual()) {
    throw Error(ErrorCode::kCapabilityMissing, problem.name() + " lacks a residual");
  }
  const Vector r = problem.residual(x);
  const Matrix j = problem.jacobian(x);
  return QuadraticModel(x, value, j.transpose() * r, j.transpose() * j);
}

QuadraticModel finite_difference_model(const Problem& problem, const Vector& x, double value,
                                       long* evaluations) {
  long count = 0;
  auto f = [&](const Vector& p) {
    ++count;
    return problem.eval(p);
  };
  Vector g;
  Matrix h;
  if (problem.has_gradient()) {
    g = problem.gradient(x);
    h = fd_jacobian_of_gradient([&](const Vector& p) { return problem.gradient(p); }, x);
  } else {
    g = fd_gradient(f, x);
    h = fd_hessian(f, x);
  }
  if (evaluations != nullptr) *evaluations += count;
  return QuadraticModel(x, value, std::move(g), h);
}

Matrix bfgs_update(const Matrix& prev_hess, const Vector& s, const Vector& y) {
  const Eigen::Index d = prev_hess.rows();
  if (prev_hess.cols() != d || s.size() != d || y.size() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "BFGS update dimensions disagree");
  }
  const double sy = s.dot(y);
  if (!(sy > kBfgsCurvatureThreshold * s.norm() * y.norm())) return prev_hess;
  const Vector hs = prev_hess * s;
  const double shs = s.dot(hs);
  if (!(shs > 0.0)) return prev_hess;
  Matrix next = prev_hess - (hs * hs.transpose()) / shs + (y * y.transpose()) / sy;
  return symmetrize(next);
}

std::pair<QuadraticModel, BfgsState> bfgs_model(const Problem& problem, const Vector& x,
                                                double value, const BfgsState& state,
                                                const BfgsOptions& options) {
  if (!problem.has_gradient()) {
    throw Error(ErrorCode::kCapabilityMissing, problem.name() + " lacks a gradient");
  }
  const Vector g = problem.gradient(x);
  const Eigen::Index d = x.size();
  BfgsState next = state;
  if (state.hess.size() == 0) {
    const double xn = x.norm();
    const double ratio = xn > 0.0 ? g.norm() / xn : (g.norm() > 0.0 ? 1e3 : 1.0);
    next.hess = std::clamp(ratio, 1e-3, 1e3) * Matrix::Identity(d, d);
  } else {
    if (state.prev_x.size() != d) {
      throw Error(ErrorCode::kDimensionMismatch, "BFGS history has the wrong dimension");
    }
    const Vector s = x - state.prev_x;
    const Vector y = g - state.prev_grad;
    const double sy = s.dot(y);
    if (sy > kBfgsCurvatureThreshold * s.norm() * y.norm()) {
      if (options.rescale_on_first_update && state.updates == 0) {
        next.hess = (y.squaredNorm() / sy) * Matrix::Identity(d, d);
      }
      next.hess = bfgs_update(next.hess, s, y);
      ++next.updates;
    }
  }
  next.prev_x = x;
  next.prev_grad = g;
  return {QuadraticModel(x, value, g, next.hess), std::move(next)};
}

std::pair<QuadraticModel, AdamState> adam_diag_model(const AdamState& state, const Vector& x,
                                                     double value, const Vector& grad,
                                                     double beta2, double eps) {
  if (grad.size() != x.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "gradient does not match x");
  }
  AdamState next = state;
  if (next.second_moment.size() == 0) next.second_moment = Vector::Zero(x.size());
  next.second_moment = beta2 * next.second_moment + (1.0 - beta2) * grad.cwiseAbs2();
  ++next.step;
  const double correction = 1.0 - std::pow(beta2, next.step);
  const Vector v_hat = next.second_moment / correction;
  const Vector diag = v_hat.cwiseSqrt().array() + eps;
  return {QuadraticModel(x, value, grad, diag.asDiagonal().toDenseMatrix()), std::move(next)};
}

}  // namespace guided_mppi
