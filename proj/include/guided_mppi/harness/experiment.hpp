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

#ifndef GUIDED_MPPI_HARNESS_EXPERIMENT_HPP_
#define GUIDED_MPPI_HARNESS_EXPERIMENT_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "guided_mppi/harness/config.hpp"
#include "guided_mppi/optimizers/newton.hpp"
#include "guided_mppi/optimizers/optimizer.hpp"

namespace guided_mppi {

struct RunResult {
  std::size_t task = 0;
  std::size_t method = 0;
  int num_samples = 0;
  std::uint64_t seed = 0;
  RunRecord record;
  std::optional<std::string> error;  // set when the run threw
};

struct PreparedTask {
  std::shared_ptr<Problem> problem;
  Vector start;
  std::optional<Vector> reference;
  std::optional<NewtonResult> newton;  // when the reference came from Newton
};

struct ExperimentResult {
  std::vector<PreparedTask> tasks;
  // Ordered by (task, method, N, seed) regardless of scheduling.
  std::vector<RunResult> runs;

  bool ok() const;
  std::vector<const RunResult*> select(std::size_t task, std::size_t method, int num_samples) const;
};

/// Builds the problem, start point and reference for every task. Throws
/// kConfigInvalid when a problem cannot be constructed.
std::vector<PreparedTask> prepare_tasks(const ExperimentConfig& config);

/// The fully resolved optimizer settings of one job.
OptimizerConfig job_config(const ExperimentConfig& config, const PreparedTask& prepared,
                           std::size_t task, std::size_t method, int num_samples,
                           std::uint64_t seed);

/// Runs every (task, method, N, seed) job on up to `jobs` threads. Failures
/// are captured per run so completed results survive.
ExperimentResult run_experiment(const ExperimentConfig& config, int jobs);

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_HARNESS_EXPERIMENT_HPP_
