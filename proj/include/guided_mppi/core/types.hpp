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

#ifndef GUIDED_MPPI_CORE_TYPES_HPP_
#define GUIDED_MPPI_CORE_TYPES_HPP_

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace guided_mppi {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Relative asymmetry ||A - A^T||_max / max(1, ||A||_max).
double relative_asymmetry(const Matrix& a);

// (A + A^T) / 2.
Matrix symmetrize(const Matrix& a);

// Gaussian sampling distribution N(mean, cov). The covariance is validated
// (symmetric, positive-definite via a Cholesky attempt) on construction and
// its lower Cholesky factor is kept for sampling.
class GaussianParams {
 public:
  GaussianParams(Vector mean, Matrix cov);

  static GaussianParams isotropic(Vector mean, double variance);

  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }
  const Matrix& chol_lower() const { return chol_lower_; }
  Eigen::Index dim() const { return mean_.size(); }

  // True when cov == s * I for some s (exact off-diagonal zeros, equal
  // diagonal within 1e-12 relative).
  bool is_isotropic() const;

 private:
  Vector mean_;
  Matrix cov_;
  Matrix chol_lower_;
};

// Normalized importance weights: finite, nonnegative, summing to one.
class WeightVector {
 public:
  explicit WeightVector(Vector weights);

  static WeightVector uniform(Eigen::Index n);

  const Vector& values() const { return weights_; }
  Eigen::Index size() const { return weights_.size(); }
  double operator[](Eigen::Index i) const { return weights_[i]; }

 private:
  Vector weights_;
};

// N sample points (one per column) with their costs. Costs may be +inf but
// never NaN.
class SampleBatch {
 public:
  SampleBatch(Matrix points, Vector costs);

  const Matrix& points() const { return points_; }
  const Vector& costs() const { return costs_; }
  Eigen::Index size() const { return costs_.size(); }
  Eigen::Index dim() const { return points_.rows(); }

 private:
  Matrix points_;
  Vector costs_;
};

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_CORE_TYPES_HPP_
