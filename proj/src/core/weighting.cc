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

#include "guided_mppi/core/weighting.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "guided_mppi/core/error.hpp"

namespace guided_mppi {

WeightVector boltzmann_weights(const Vector& costs, double lambda) {
  if (!(lambda > 0.0)) {
    throw Error(ErrorCode::kNonPositiveTemperature,
                "lambda must be positive, got " + std::to_string(lambda));
  }
  if (costs.size() == 0) throw Error(ErrorCode::kEmptyBatch, "no costs");
  double min_cost = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < costs.size(); ++i) {
    if (std::isnan(costs[i])) {
      throw Error(ErrorCode::kNaNCost, "cost of sample " + std::to_string(i) + " is NaN");
    }
    min_cost = std::min(min_cost, costs[i]);
  }
  if (min_cost == std::numeric_limits<double>::infinity()) {
    throw Error(ErrorCode::kDegenerateBatch, "every cost is +inf");
  }
  if (min_cost == -std::numeric_limits<double>::infinity()) {
    throw Error(ErrorCode::kDegenerateBatch, "a cost is -inf");
  }
  Vector w(costs.size());
  for (Eigen::Index i = 0; i < costs.size(); ++i) {
    w[i] = std::exp(-(costs[i] - min_cost) / lambda);
  }
  w /= w.sum();
  return WeightVector(std::move(w));
}

Vector weighted_mean(const Matrix& points, const WeightVector& weights) {
  if (points.cols() != weights.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(points.cols()) + " points but " +
                    std::to_string(weights.size()) + " weights");
  }
  Vector mean = Vector::Zero(points.rows());
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    mean += weights[i] * points.col(i);
  }
  return mean;
}

Vector weighted_mean(const SampleBatch& batch, const WeightVector& weights) {
  return weighted_mean(batch.points(), weights);
}

double effective_sample_size(const WeightVector& weights) {
  return 1.0 / weights.values().squaredNorm();
}

Matrix sample_gaussian(const GaussianParams& params, Eigen::Index n, Rng& rng) {
  if (n < 1) throw Error(ErrorCode::kEmptyBatch, "sample count must be >= 1");
  const Eigen::Index d = params.dim();
  Matrix z(d, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) z(i, j) = rng.normal();
  }
  Matrix points = params.chol_lower() * z;
  points.colwise() += params.mean();
  return points;
}

}  // namespace guided_mppi
