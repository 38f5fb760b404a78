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

#include "guided_mppi/core/types.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "guided_mppi/core/error.hpp"

namespace guided_mppi {

double relative_asymmetry(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

GaussianParams::GaussianParams(Vector mean, Matrix cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "covariance is " + std::to_string(cov_.rows()) + "x" +
                    std::to_string(cov_.cols()) + " for a mean of dimension " +
                    std::to_string(mean_.size()));
  }
  if (mean_.size() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "zero-dimensional Gaussian");
  }
  if (!mean_.allFinite() || !cov_.allFinite()) {
    throw Error(ErrorCode::kNotPositiveDefinite, "non-finite Gaussian parameters");
  }
  if (relative_asymmetry(cov_) > 1e-12) {
    throw Error(ErrorCode::kNotSymmetric, "covariance is not symmetric");
  }
  Eigen::LLT<Matrix> llt(cov_);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotPositiveDefinite, "covariance Cholesky failed");
  }
  chol_lower_ = llt.matrixL();
}

GaussianParams GaussianParams::isotropic(Vector mean, double variance) {
  const auto d = mean.size();
  return GaussianParams(std::move(mean), variance * Matrix::Identity(d, d));
}

bool GaussianParams::is_isotropic() const {
  const Eigen::Index d = dim();
  const double s = cov_(0, 0);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i == j) {
        if (std::abs(cov_(i, i) - s) > 1e-12 * std::abs(s)) return false;
      } else if (cov_(i, j) != 0.0) {
        return false;
      }
    }
  }
  return true;
}

WeightVector::WeightVector(Vector weights) : weights_(std::move(weights)) {
  if (weights_.size() == 0) {
    throw Error(ErrorCode::kEmptyBatch, "empty weight vector");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      throw Error(ErrorCode::kDegenerateBatch,
                  "weight " + std::to_string(i) + " is negative or non-finite");
    }
  }
  if (std::abs(weights_.sum() - 1.0) > 1e-10) {
    throw Error(ErrorCode::kDegenerateBatch, "weights do not sum to one");
  }
}

WeightVector WeightVector::uniform(Eigen::Index n) {
  return WeightVector(Vector::Constant(n, 1.0 / static_cast<double>(n)));
}

SampleBatch::SampleBatch(Matrix points, Vector costs)
    : points_(std::move(points)), costs_(std::move(costs)) {
  if (costs_.size() == 0) throw Error(ErrorCode::kEmptyBatch, "empty batch");
  if (points_.cols() != costs_.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(points_.cols()) + " points but " +
                    std::to_string(costs_.size()) + " costs");
  }
  for (Eigen::Index i = 0; i < costs_.size(); ++i) {
    if (std::isnan(costs_[i])) {
      throw Error(ErrorCode::kNaNCost, "cost of sample " + std::to_string(i) + " is NaN");
    }
  }
}

}  // namespace guided_mppi
