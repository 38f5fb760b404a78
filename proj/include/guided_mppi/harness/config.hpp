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

#ifndef GUIDED_MPPI_HARNESS_CONFIG_HPP_
#define GUIDED_MPPI_HARNESS_CONFIG_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "guided_mppi/optimizers/optimizer.hpp"
#include "guided_mppi/problems/cartpole.hpp"

namespace guided_mppi {

enum class ReferenceSource {
  kKnown,    // the problem's closed-form minimizer
  kNewton,   // damped Newton from the start point
  kExplicit, // vector given in the config
  kNone,
};

struct ProblemSpec {
  std::string name;  // benchmark name or "cartpole"
  int dim = 2;
  std::optional<Vector> start;  // defaults to the benchmark start / zeros
  double curvature = 15.0;      // narrow_valley_2d only
  CartPoleSpec cartpole;
  ReferenceSource reference = ReferenceSource::kKnown;
  std::optional<Vector> reference_point;
  double newton_tol = 1e-8;
  int newton_max_iters = 2000;
};

struct MethodSpec {
  std::string label;
  OptimizerKind kind = OptimizerKind::kGuided;
  // Carries guidance, provider, formulation, prior_sigma and cem settings;
  // samples, seed, start, stop and iteration cap are filled per job.
  OptimizerConfig settings;
};

struct TaskSpec {
  std::string label;
  ProblemSpec problem;
  std::vector<MethodSpec> methods;
  StopCriterion stop;
  int max_iters = 100;
};

struct ExperimentConfig {
  std::string experiment;
  std::vector<std::uint64_t> seeds;
  std::vector<int> samples;
  std::vector<TaskSpec> tasks;
  std::string canonical;  // sorted-key JSON after overrides
  std::string hash;       // 16 hex digits of FNV-1a 64 over `canonical`

  std::size_t method_count() const;
};

// Command-line values that replace the corresponding config entries before
// hashing.
struct ConfigOverrides {
  std::optional<std::vector<std::uint64_t>> seeds;
  std::optional<std::vector<int>> samples;
  std::optional<int> max_iters;
};

/// Parses a JSON experiment description. Every failure, including unknown
/// keys, is reported as kConfigInvalid.
ExperimentConfig parse_experiment_config(const std::string& text,
                                         const ConfigOverrides& overrides = {});
ExperimentConfig load_experiment_config(const std::string& path,
                                        const ConfigOverrides& overrides = {});

std::uint64_t fnv1a64(const std::string& bytes);

/// Instantiates the problem described by `spec` (reference not yet attached).
std::shared_ptr<Problem> make_problem(const ProblemSpec& spec);
Vector problem_start(const ProblemSpec& spec, const Problem& problem);

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_HARNESS_CONFIG_HPP_
