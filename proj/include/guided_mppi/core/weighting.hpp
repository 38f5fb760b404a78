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

#ifndef GUIDED_MPPI_CORE_WEIGHTING_HPP_
#define GUIDED_MPPI_CORE_WEIGHTING_HPP_

#include "guided_mppi/core/random.hpp"
#include "guided_mppi/core/types.hpp"

namespace guided_mppi {

/// Softmax weights w_i ∝ exp(-costs_i / lambda), evaluated after subtracting
/// the minimum cost. +inf costs receive zero weight.
///
/// Throws kNonPositiveTemperature, kEmptyBatch, kNaNCost, or
/// kDegenerateBatch when every cost is +inf.
WeightVector boltzmann_weights(const Vector& costs, double lambda);

/// sum_i w_i * points_i.
Vector weighted_mean(const SampleBatch& batch, const WeightVector& weights);
Vector weighted_mean(const Matrix& points, const WeightVector& weights);

/// 1 / sum_i w_i^2, in [1, N].
double effective_sample_size(const WeightVector& weights);

/// n draws (one per column) mean + L z with L the Cholesky factor of cov.
/// Column j depends only on the first j+1 blocks of the stream, so a larger n
/// extends rather than reshuffles a smaller batch.
Matrix sample_gaussian(const GaussianParams& params, Eigen::Index n, Rng& rng);

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_CORE_WEIGHTING_HPP_
