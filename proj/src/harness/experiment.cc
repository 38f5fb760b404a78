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

#include "guided_mppi/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "guided_mppi/core/error.hpp"
#include "guided_mppi/problems/cartpole.hpp"

namespace guided_mppi {

bool ExperimentResult::ok() const {
  return std::none_of(runs.begin(), runs.end(), [](const RunResult& r) { return r.error.has_value(); });
}

std::vector<const RunResult*> ExperimentResult::select(std::size_t task, std::size_t method,
                                                       int num_samples) const {
  std::vector<const RunResult*> out;
  for (const RunResult& r : runs) {
    if (r.task == task && r.method == method && r.num_samples == num_samples && !r.error) out.push_back(&r);
  }
  return out;
}

std::vector<PreparedTask> prepare_tasks(const ExperimentConfig& config) {
  std::vector<PreparedTask> out;
  for (const TaskSpec& task : config.tasks) {
    PreparedTask p;
    try {
      p.problem = make_problem(task.problem);
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfigInvalid, "task '" + task.label + "': " + e.what());
    }
    p.start = problem_start(task.problem, *p.problem);
    if (p.start.size() != p.problem->dim()) {
      throw Error(ErrorCode::kConfigInvalid, "task '" + task.label + "': start has the wrong size");
    }
    switch (task.problem.reference) {
      case ReferenceSource::kKnown:
        p.reference = p.problem->known_optimum();
        break;
      case ReferenceSource::kExplicit:
        p.reference = task.problem.reference_point;
        break;
      case ReferenceSource::kNewton:
        p.newton = newton_reference(*p.problem, p.start, task.problem.newton_tol, task.problem.newton_max_iters);
        p.reference = p.newton->x;
        break;
      case ReferenceSource::kNone:
        break;
    }
    if (auto* cp = dynamic_cast<CartPoleProblem*>(p.problem.get()); cp && p.reference) {
      cp->set_reference(*p.reference);
    }
    out.push_back(std::move(p));
  }
  return out;
}

OptimizerConfig job_config(const ExperimentConfig& config, const PreparedTask& prepared,
                           std::size_t task, std::size_t method, int num_samples,
                           std::uint64_t seed) {
  const TaskSpec& t = config.tasks.at(task);
  OptimizerConfig c = t.methods.at(method).settings;
  c.num_samples = num_samples;
  c.max_iters = t.max_iters;
  c.seed = seed;
  c.stop = t.stop;
  c.initial_mean = prepared.start;
  c.reference = prepared.reference;
  return c;
}

ExperimentResult run_experiment(const ExperimentConfig& config, int jobs) {
  ExperimentResult result;
  result.tasks = prepare_tasks(config);

  for (std::size_t t = 0; t < config.tasks.size(); ++t) {
    for (std::size_t m = 0; m < config.tasks[t].methods.size(); ++m) {
      for (int n : config.samples) {
        for (std::uint64_t seed : config.seeds) {
          RunResult r;
          r.task = t;
          r.method = m;
          r.num_samples = n;
          r.seed = seed;
          result.runs.push_back(std::move(r));
        }
      }
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < result.runs.size(); i = next.fetch_add(1)) {
      RunResult& r = result.runs[i];
      try {
        const OptimizerConfig c = job_config(config, result.tasks[r.task], r.task, r.method, r.num_samples, r.seed);
        r.record = run(*result.tasks[r.task].problem, config.tasks[r.task].methods[r.method].kind, c);
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(result.runs.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  return result;
}

}  // namespace guided_mppi
