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

#include "guided_mppi/models/quadratic_model.hpp"

#include <utility>

#include "guided_mppi/core/error.hpp"

namespace guided_mppi {

QuadraticModel::QuadraticModel(Vector center, double value, Vector grad, const Matrix& hess)
    : center_(std::move(center)), value_(value), grad_(std::move(grad)) {
  const Eigen::Index d = center_.size();
  if (grad_.size() != d || hess.rows() != d || hess.cols() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "model gradient/Hessian do not match center");
  }
  hess_ = symmetrize(hess);
}

double QuadraticModel::operator()(const Vector& x) const {
  const Vector e = x - center_;
  return value_ + grad_.dot(e) + 0.5 * e.dot(hess_ * e);
}

}  // namespace guided_mppi
