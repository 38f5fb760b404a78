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

#ifndef GUIDED_MPPI_MODELS_PROVIDER_HPP_
#define GUIDED_MPPI_MODELS_PROVIDER_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "guided_mppi/core/random.hpp"
#include "guided_mppi/models/problem.hpp"
#include "guided_mppi/models/providers.hpp"
#include "guided_mppi/models/quadratic_model.hpp"
#include "guided_mppi/models/smoothing.hpp"

namespace guided_mppi {

enum class ProviderKind {
  kExact,
  kFiniteDiff,
  kGaussNewton,
  kBfgs,
  kAdamDiag,
  kRandomizedSmoothing,
};

std::string_view to_string(ProviderKind kind);
// Accepts the names produced by to_string; throws kConfigInvalid otherwise.
ProviderKind parse_provider_kind(std::string_view name);

struct ProviderConfig {
  ProviderKind kind = ProviderKind::kExact;
  SmoothingConfig smoothing;
  double adam_beta2 = 0.999;
  double adam_eps = kAdamEpsilon;
  BfgsOptions bfgs;
};

// Explicit state for the history-based providers; threaded by the caller.
struct ProviderState {
  BfgsState bfgs;
  AdamState adam;
};

struct ModelOutput {
  QuadraticModel model;
  ProviderState state;
  long f_evals = 0;          // objective calls beyond the known value at x
  double sigma_used = 0.0;   // smoothing scale, 0 for derivative-based kinds
};

/// Builds the quadratic model at x with the configured strategy. `fx` is the
/// already known f(x); `iteration` selects the smoothing scale.
ModelOutput build_model(const ProviderConfig& config, const Problem& problem, const Vector& x,
                        double fx, const ProviderState& state, int iteration, Rng& rng);

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_MODELS_PROVIDER_HPP_
