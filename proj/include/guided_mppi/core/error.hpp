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

#ifndef GUIDED_MPPI_CORE_ERROR_HPP_
#define GUIDED_MPPI_CORE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace guided_mppi {

enum class ErrorCode {
  kNonPositiveTemperature,
  kEmptyBatch,
  kNaNCost,
  kDegenerateBatch,
  kLengthMismatch,
  kDimensionMismatch,
  kNotPositiveDefinite,
  kNotSymmetric,
  kCholeskyFailure,
  kCapabilityMissing,
  kEstimatorFailure,
  kConfigInvalid,
  kSingularSystem,
  kCenterMismatch,
  kFloorInfeasible,
  kNonFiniteState,
  kDegenerateTask,
  kEmptyInput,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this exception type; `code()`
// identifies the failure class so callers can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_CORE_ERROR_HPP_
