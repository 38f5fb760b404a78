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

#include "guided_mppi/models/smoothing.hpp"

#include <cmath>
#include <string>

#include "guided_mppi/core/error.hpp"

namespace guided_mppi {

void SmoothingConfig::validate() const {
  if (!(sigma > 0.0)) throw Error(ErrorCode::kConfigInvalid, "smoothing sigma must be positive");
  if (num_samples < 2) {
    throw Error(ErrorCode::kConfigInvalid,
                "smoothing needs at least 2 samples, got " + std::to_string(num_samples));
  }
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i].sigma > 0.0)) {
      throw Error(ErrorCode::kConfigInvalid, "schedule sigma must be positive");
    }
    if (i > 0 && schedule[i].from_iteration <= schedule[i - 1].from_iteration) {
      throw Error(ErrorCode::kConfigInvalid, "schedule thresholds must strictly increase");
    }
  }
}

double SmoothingConfig::sigma_at(int iteration) const {
  double s = sigma;
  for (const SigmaStage& stage : schedule) {
    if (iteration >= stage.from_iteration) s = stage.sigma;
  }
  return s;
}

SmoothedEstimate rs_estimate(const Problem& problem, const Vector& x, double fx, double sigma,
                             int num_samples, Rng& rng) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::kConfigInvalid, "smoothing sigma must be positive");
  if (num_samples < 1) throw Error(ErrorCode::kConfigInvalid, "smoothing needs samples");
  if (std::isnan(fx)) throw Error(ErrorCode::kEstimatorFailure, "f(x) is NaN");
  const Eigen::Index d = x.size();
  const double s2 = sigma * sigma;
  SmoothedEstimate out;
  out.grad = Vector::Zero(d);
  out.hess = Matrix::Zero(d, d);
  Vector z(d);
  for (int j = 0; j < num_samples; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) z[i] = sigma * rng.normal();
    const double fz = problem.eval(x + z);
    ++out.evaluations;
    if (std::isnan(fz)) {
      throw Error(ErrorCode::kEstimatorFailure,
                  "objective is NaN at smoothing sample " + std::to_string(j));
    }
    const double df = fz - fx;
    out.grad += df * z;
    out.hess += df * (z * z.transpose());
    out.hess.diagonal().array() -= df * s2;
  }
  out.grad /= num_samples * s2;
  out.hess = symmetrize(out.hess / (num_samples * s2 * s2));
  return out;
}

Vector rs_gradient(const Problem& problem, const Vector& x, const SmoothingConfig& cfg, Rng& rng) {
  cfg.validate();
  return rs_estimate(problem, x, problem.eval(x), cfg.sigma, cfg.num_samples, rng).grad;
}

Matrix rs_hessian(const Problem& problem, const Vector& x, const SmoothingConfig& cfg, Rng& rng) {
  cfg.validate();
  return rs_estimate(problem, x, problem.eval(x), cfg.sigma, cfg.num_samples, rng).hess;
}

QuadraticModel rs_model(const Problem& problem, const Vector& x, const SmoothingConfig& cfg,
                        Rng& rng, int iteration) {
  cfg.validate();
  const double fx = problem.eval(x);
  SmoothedEstimate est = rs_estimate(problem, x, fx, cfg.sigma_at(iteration), cfg.num_samples, rng);
  return QuadraticModel(x, fx, std::move(est.grad), est.hess);
}

}  // namespace guided_mppi
