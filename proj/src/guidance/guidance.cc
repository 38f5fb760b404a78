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

#include "guided_mppi/guidance/guidance.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "guided_mppi/core/error.hpp"

namespace guided_mppi {

void GuidanceConfig::validate() const {
  if (!(lambda > 0.0)) throw Error(ErrorCode::kConfigInvalid, "lambda must be positive");
  if (!(alpha_delta >= 0.0 && alpha_delta <= 1.0) || !(alpha_sigma >= 0.0 && alpha_sigma <= 1.0)) {
    throw Error(ErrorCode::kConfigInvalid, "EMA factors must lie in [0, 1]");
  }
  if (sigma_target_sq && !(*sigma_target_sq > 0.0)) {
    throw Error(ErrorCode::kConfigInvalid, "sigma_target_sq must be positive");
  }
  if (!(hess_floor > 0.0)) throw Error(ErrorCode::kConfigInvalid, "hess_floor must be positive");
  if (!(prior_variance_ceiling > 0.0)) {
    throw Error(ErrorCode::kConfigInvalid, "prior_variance_ceiling must be positive");
  }
}

Matrix convexify(const Matrix& hess, double floor) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrize(hess));
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::kSingularSystem, "eigendecomposition failed");
  }
  if (eig.eigenvalues().minCoeff() > floor) return symmetrize(hess);
  const Vector clamped = eig.eigenvalues().cwiseMax(floor);
  const Matrix& v = eig.eigenvectors();
  return symmetrize(v * clamped.asDiagonal() * v.transpose());
}

double convexify_floor(const Matrix& hess, double relative_floor) {
  const double norm_inf = hess.size() ? hess.cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
  return relative_floor * std::max(1.0, norm_inf);
}

Matrix guided_covariance(const Matrix& prior_cov, const Matrix& hess, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::kNonPositiveTemperature, "lambda must be positive");
  const Eigen::Index d = prior_cov.rows();
  if (prior_cov.cols() != d || hess.rows() != d || hess.cols() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "prior covariance and Hessian disagree");
  }
  Eigen::LLT<Matrix> prior_llt(prior_cov);
  if (prior_llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotPositiveDefinite, "prior covariance is not positive-definite");
  }
  const Matrix l = prior_llt.matrixL();
  Matrix inner = l.transpose() * hess * l / lambda;
  inner = symmetrize(inner);
  inner.diagonal().array() += 1.0;
  Eigen::LLT<Matrix> inner_llt(inner);
  if (inner_llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kSingularSystem, "guided precision is not positive-definite");
  }
  // C = M^-1 L^T with M the Cholesky factor of the inner matrix.
  const Matrix c = inner_llt.matrixL().solve(l.transpose());
  return symmetrize(c.transpose() * c);
}

Vector guided_mean(const GaussianParams& prior, const Matrix& guided_cov,
                   const QuadraticModel& model, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::kNonPositiveTemperature, "lambda must be positive");
  const Vector& xbar = prior.mean();
  if (model.dim() != prior.dim() || guided_cov.rows() != prior.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "model and prior dimensions disagree");
  }
  const double scale = std::max(1.0, xbar.cwiseAbs().maxCoeff());
  if ((model.center() - xbar).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::kCenterMismatch, "model was not expanded at the prior mean");
  }
  const Vector prior_precision_mean =
      prior.chol_lower().transpose().triangularView<Eigen::Upper>().solve(
          prior.chol_lower().triangularView<Eigen::Lower>().solve(xbar));
  const Vector rhs = prior_precision_mean + (model.hess() * xbar - model.grad()) / lambda;
  return guided_cov * rhs;
}

GuidedStep guided_step(const Matrix& prior_cov, const QuadraticModel& model, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::kNonPositiveTemperature, "lambda must be positive");
  const Eigen::Index d = model.dim();
  if (prior_cov.rows() != d || prior_cov.cols() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "prior covariance and model disagree");
  }
  GuidedStep out;
  out.cov = guided_covariance(prior_cov, model.hess(), lambda);
  Eigen::LLT<Matrix> prior_llt(prior_cov);
  const Matrix prior_precision = prior_llt.solve(Matrix::Identity(d, d));
  Matrix system = symmetrize(lambda * prior_precision + model.hess());
  Eigen::LLT<Matrix> system_llt(system);
  if (system_llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kSingularSystem, "lambda S0^-1 + H is not positive-definite");
  }
  out.delta = -system_llt.solve(model.grad());
  return out;
}

EmaState ema_smooth(const std::optional<EmaState>& previous, const Vector& new_delta,
                    const Matrix& new_cov, const GuidanceConfig& cfg) {
  if (!previous) return EmaState{new_delta, new_cov};
  if (previous->delta.size() != new_delta.size() || previous->cov.rows() != new_cov.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "EMA state dimension changed");
  }
  EmaState out;
  out.delta = cfg.alpha_delta * new_delta + (1.0 - cfg.alpha_delta) * previous->delta;
  out.cov = symmetrize(cfg.alpha_sigma * new_cov + (1.0 - cfg.alpha_sigma) * previous->cov);
  return out;
}

double variance_floor(double lambda, double sigma_target_sq, double kappa_max) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::kNonPositiveTemperature, "lambda must be positive");
  if (!(sigma_target_sq > 0.0)) {
    throw Error(ErrorCode::kConfigInvalid, "sigma_target_sq must be positive");
  }
  if (kappa_max <= 0.0) return sigma_target_sq;
  const double denom = lambda - sigma_target_sq * kappa_max;
  if (denom <= 0.0) {
    throw Error(ErrorCode::kFloorInfeasible,
                "target variance " + std::to_string(sigma_target_sq) +
                    " unreachable at lambda " + std::to_string(lambda) + " and curvature " +
                    std::to_string(kappa_max));
  }
  return lambda * sigma_target_sq / denom;
}

namespace {

struct PreparedPrior {
  QuadraticModel model;  // convexified
  Matrix prior_cov;
  bool floor_applied = false;
  bool floor_infeasible = false;
};

PreparedPrior prepare(const GaussianParams& prior, const QuadraticModel& model,
                      const GuidanceConfig& cfg) {
  cfg.validate();
  if (model.dim() != prior.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "model and prior dimensions disagree");
  }
  const Matrix hc = convexify(model.hess(), convexify_floor(model.hess(), cfg.hess_floor));
  PreparedPrior out{QuadraticModel(model.center(), model.value(), model.grad(), hc),
                    prior.cov()};
  if (cfg.sigma_target_sq && prior.is_isotropic()) {
    const double kappa_max = Eigen::SelfAdjointEigenSolver<Matrix>(
                                 hc, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
    const double current = prior.cov()(0, 0);
    const Eigen::Index d = prior.dim();
    try {
      const double bound = variance_floor(cfg.lambda, *cfg.sigma_target_sq, kappa_max);
      if (bound > current) {
        out.prior_cov = bound * Matrix::Identity(d, d);
        out.floor_applied = true;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kFloorInfeasible) throw;
      out.prior_cov = cfg.prior_variance_ceiling * Matrix::Identity(d, d);
      out.floor_infeasible = true;
    }
  }
  return out;
}

// Clamps eigenvalues of `cov` from below at `target`; returns whether any
// eigenvalue moved.
bool clamp_spectrum(Matrix& cov, double target) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  if (eig.eigenvalues().minCoeff() >= target) return false;
  const Vector clamped = eig.eigenvalues().cwiseMax(target);
  cov = symmetrize(eig.eigenvectors() * clamped.asDiagonal() * eig.eigenvectors().transpose());
  return true;
}

}  // namespace

GuidedPrior build_guided_prior(const GaussianParams& prior, const QuadraticModel& model,
                               const GuidanceConfig& cfg,
                               const std::optional<EmaState>& previous) {
  PreparedPrior prep = prepare(prior, model, cfg);
  const GuidedStep step = guided_step(prep.prior_cov, prep.model, cfg.lambda);
  GuidedPrior out;
  out.ema = ema_smooth(previous, step.delta, step.cov, cfg);
  out.prior_cov_used = std::move(prep.prior_cov);
  out.floor_applied = prep.floor_applied;
  out.floor_infeasible = prep.floor_infeasible;
  if (cfg.sigma_target_sq && !prior.is_isotropic()) {
    out.floor_clamped = clamp_spectrum(out.ema.cov, *cfg.sigma_target_sq);
  }
  out.mean = prior.mean() + out.ema.delta;
  out.cov = out.ema.cov;
  return out;
}

GuidedPrior build_guided_prior_full(const GaussianParams& prior, const QuadraticModel& model,
                                    const GuidanceConfig& cfg) {
  PreparedPrior prep = prepare(prior, model, cfg);
  const GaussianParams effective(prior.mean(), prep.prior_cov);
  GuidedPrior out;
  out.cov = guided_covariance(prep.prior_cov, prep.model.hess(), cfg.lambda);
  out.mean = guided_mean(effective, out.cov, prep.model, cfg.lambda);
  if (cfg.sigma_target_sq && !prior.is_isotropic()) {
    out.floor_clamped = clamp_spectrum(out.cov, *cfg.sigma_target_sq);
  }
  out.ema = EmaState{out.mean - prior.mean(), out.cov};
  out.prior_cov_used = std::move(prep.prior_cov);
  out.floor_applied = prep.floor_applied;
  out.floor_infeasible = prep.floor_infeasible;
  return out;
}

}  // namespace guided_mppi
