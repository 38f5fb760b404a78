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

#include "guided_mppi/models/problem.hpp"

#include "guided_mppi/core/error.hpp"

namespace guided_mppi {

Vector Problem::gradient(const Vector&) const {
  throw Error(ErrorCode::kCapabilityMissing, name() + " has no gradient");
}

Matrix Problem::hessian(const Vector&) const {
  throw Error(ErrorCode::kCapabilityMissing, name() + " has no Hessian");
}

Vector Problem::residual(const Vector&) const {
  throw Error(ErrorCode::kCapabilityMissing, name() + " has no residual");
}

Matrix Problem::jacobian(const Vector&) const {
  throw Error(ErrorCode::kCapabilityMissing, name() + " has no residual Jacobian");
}

void Problem::check_dim(const Vector& x) const {
  if (x.size() != dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                name() + " expects dimension " + std::to_string(dim()) + ", got " +
                    std::to_string(x.size()));
  }
}

}  // namespace guided_mppi
