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

#ifndef GUIDED_MPPI_OPTIMIZERS_OPTIMIZER_HPP_
#define GUIDED_MPPI_OPTIMIZERS_OPTIMIZER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "guided_mppi/core/random.hpp"
#include "guided_mppi/core/types.hpp"
#include "guided_mppi/guidance/guidance.hpp"
#include "guided_mppi/models/problem.hpp"
#include "guided_mppi/models/provider.hpp"

namespace guided_mppi {

enum class OptimizerKind { kGuided, kVanilla, kCem };
enum class Formulation { kFullIterate, kIncremental };

std::string_view to_string(OptimizerKind kind);
std::string_view to_string(Formulation formulation);
OptimizerKind parse_optimizer_kind(std::string_view name);
Formulation parse_formulation(std::string_view name);

struct StopCriterion {
  // Stop once ||mean - reference||_inf < distance_tol.
  std::optional<double> distance_tol;
  // Stop once ||grad f(mean)||_inf < gradient_tol (problem must expose grad).
  std::optional<double> gradient_tol;
};

struct CemConfig {
  double elite_frac = 0.1;
  double alpha = 0.5;  // covariance EMA factor, 1 = no smoothing
  double jitter = 1e-9;
};

struct OptimizerConfig {
  int num_samples = 100;
  int max_iters = 100;
  GuidanceConfig guidance;
  ProviderConfig provider;
  Formulation formulation = Formulation::kIncremental;
  std::uint64_t seed = 0;
  StopCriterion stop;
  CemConfig cem;

  Vector initial_mean;
  // Isotropic prior standard deviation; ignored when prior_cov is set.
  double prior_sigma = 0.2;
  std::optional<Matrix> prior_cov;
  // Overrides problem.known_optimum() for distances and stopping.
  std::optional<Vector> reference;

  // Throws kConfigInvalid. max_iters == 0 is allowed and yields the
  // initial row only.
  void validate() const;
  Matrix initial_cov() const;
};

struct RunRow {
  int iter = 0;
  Vector mean;
  double cost = 0.0;  // f(mean)
  double ess = 0.0;   // NaN for the initial row
  double dist_to_ref = 0.0;  // NaN when no reference is known
  std::int64_t f_evals = 0;  // cumulative
  double sigma_used = 0.0;
  // Every sample cost was +inf, or the proposed mean had a non-finite cost;
  // the mean was kept.
  bool degenerate = false;
  bool floor_applied = false;
  bool floor_infeasible = false;
  bool floor_clamped = false;
};

struct RunRecord {
  std::vector<RunRow> rows;
  bool converged = false;
  // Iteration at which the stop criterion first held, if it did.
  std::optional<int> converged_iter;
};

// Per-run optimizer state. Which fields are used depends on the optimizer.
struct OptimizerState {
  Vector mean;
  double cost = 0.0;  // cached f(mean)
  Matrix cov;         // guided: prior covariance S0; vanilla, CEM: sampling cov
  ProviderState provider;
  std::optional<EmaState> ema;
  std::int64_t f_evals = 0;
  int iter = 0;
};

struct StepResult {
  OptimizerState state;
  RunRow row;
};

/// Evaluates f at the configured start and seeds the state (one f-call).
OptimizerState initial_state(const Problem& problem, const OptimizerConfig& cfg);

/// One iteration of model-guided MPPI. `rng` is the iteration stream: the
/// model uses rng.child(0) and the sampler rng.child(1).
StepResult guided_mppi_step(const OptimizerState& state, const Problem& problem,
                            const OptimizerConfig& cfg, const Rng& rng);

/// Boltzmann-weighted mean under the fixed covariance state.cov. Samples
/// come from rng.child(1), matching the guided sampler.
StepResult vanilla_mppi_step(const OptimizerState& state, const Problem& problem,
                             const OptimizerConfig& cfg, const Rng& rng);

/// Cross-entropy method with elite refitting of mean and covariance.
StepResult cem_step(const OptimizerState& state, const Problem& problem,
                    const OptimizerConfig& cfg, const Rng& rng);

/// Iterates the chosen step with iteration streams derive_seed(seed, k)
/// until the stop criterion or max_iters. Deterministic per seed.
RunRecord run(const Problem& problem, OptimizerKind kind, const OptimizerConfig& cfg);

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_OPTIMIZERS_OPTIMIZER_HPP_
