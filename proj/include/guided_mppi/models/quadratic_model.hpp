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

#ifndef GUIDED_MPPI_MODELS_QUADRATIC_MODEL_HPP_
#define GUIDED_MPPI_MODELS_QUADRATIC_MODEL_HPP_

#include "guided_mppi/core/types.hpp"

namespace guided_mppi {

// m(x) = value + grad^T (x - center) + 1/2 (x - center)^T hess (x - center).
// The Hessian is symmetrized on construction and may be indefinite.
class QuadraticModel {
 public:
  QuadraticModel(Vector center, double value, Vector grad, const Matrix& hess);

  const Vector& center() const { return center_; }
  double value() const { return value_; }
  const Vector& grad() const { return grad_; }
  const Matrix& hess() const { return hess_; }
  Eigen::Index dim() const { return center_.size(); }

  double operator()(const Vector& x) const;

 private:
  Vector center_;
  double value_;
  Vector grad_;
  Matrix hess_;
};

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_MODELS_QUADRATIC_MODEL_HPP_
