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

#include "guided_mppi/models/provider.hpp"

#include "guided_mppi/core/error.hpp"

namespace guided_mppi {

std::string_view to_string(ProviderKind kind) {
  switch (kind) {
    case ProviderKind::kExact: return "exact";
    case ProviderKind::kFiniteDiff: return "finite_diff";
    case ProviderKind::kGaussNewton: return "gauss_newton";
    case ProviderKind::kBfgs: return "bfgs";
    case ProviderKind::kAdamDiag: return "adam_diag";
    case ProviderKind::kRandomizedSmoothing: return "rs";
  }
  return "unknown";
}

ProviderKind parse_provider_kind(std::string_view name) {
  for (ProviderKind k : {ProviderKind::kExact, ProviderKind::kFiniteDiff, ProviderKind::kGaussNewton,
                         ProviderKind::kBfgs, ProviderKind::kAdamDiag,
                         ProviderKind::kRandomizedSmoothing}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::kConfigInvalid, "unknown model provider '" + std::string(name) + "'");
}

ModelOutput build_model(const ProviderConfig& config, const Problem& problem, const Vector& x,
                        double fx, const ProviderState& state, int iteration, Rng& rng) {
  switch (config.kind) {
    case ProviderKind::kExact:
      return {exact_model(problem, x, fx), state, 0, 0.0};
    case ProviderKind::kFiniteDiff: {
      long evals = 0;
      QuadraticModel m = finite_difference_model(problem, x, fx, &evals);
      return {std::move(m), state, evals, 0.0};
    }
    case ProviderKind::kGaussNewton:
      return {gauss_newton_model(problem, x, fx), state, 0, 0.0};
    case ProviderKind::kBfgs: {
      auto [m, bfgs] = bfgs_model(problem, x, fx, state.bfgs, config.bfgs);
      ProviderState next = state;
      next.bfgs = std::move(bfgs);
      return {std::move(m), std::move(next), 0, 0.0};
    }
    case ProviderKind::kAdamDiag: {
      if (!problem.has_gradient()) {
        throw Error(ErrorCode::kCapabilityMissing, problem.name() + " lacks a gradient");
      }
      auto [m, adam] = adam_diag_model(state.adam, x, fx, problem.gradient(x), config.adam_beta2,
                                       config.adam_eps);
      ProviderState next = state;
      next.adam = std::move(adam);
      return {std::move(m), std::move(next), 0, 0.0};
    }
    case ProviderKind::kRandomizedSmoothing: {
      config.smoothing.validate();
      const double sigma = config.smoothing.sigma_at(iteration);
      SmoothedEstimate est =
          rs_estimate(problem, x, fx, sigma, config.smoothing.num_samples, rng);
      return {QuadraticModel(x, fx, std::move(est.grad), est.hess), state, est.evaluations, sigma};
    }
  }
  throw Error(ErrorCode::kConfigInvalid, "unhandled provider kind");
}

}  // namespace guided_mppi
