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

#include "guided_mppi/core/error.hpp"

namespace guided_mppi {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorCode::kEmptyBatch: return "EmptyBatch";
    case ErrorCode::kNaNCost: return "NaNCost";
    case ErrorCode::kDegenerateBatch: return "DegenerateBatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kCholeskyFailure: return "CholeskyFailure";
    case ErrorCode::kCapabilityMissing: return "CapabilityMissing";
    case ErrorCode::kEstimatorFailure: return "EstimatorFailure";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kCenterMismatch: return "CenterMismatch";
    case ErrorCode::kFloorInfeasible: return "FloorInfeasible";
    case ErrorCode::kNonFiniteState: return "NonFiniteState";
    case ErrorCode::kDegenerateTask: return "DegenerateTask";
    case ErrorCode::kEmptyInput: return "EmptyInput";
  }
  return "Unknown";
}

}  // namespace guided_mppi
