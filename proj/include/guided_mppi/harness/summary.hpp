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

#ifndef GUIDED_MPPI_HARNESS_SUMMARY_HPP_
#define GUIDED_MPPI_HARNESS_SUMMARY_HPP_

#include <cstddef>
#include <vector>

#include "guided_mppi/optimizers/optimizer.hpp"

namespace guided_mppi {

// Iterations-to-threshold statistics. Non-converged runs count as failures
// and are excluded from mean and std.
struct IterationSummary {
  std::size_t runs = 0;
  std::size_t failures = 0;
  double mean = 0.0;  // NaN when every run failed
  double std = 0.0;   // sample std (n - 1); 0 for a single success
  // Runs that converged within `within` iterations, for a caller-chosen cap.
  std::size_t converged_within(const std::vector<RunRecord>& records, int within) const;
};

struct QuantileSummary {
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double iqr() const { return q75 - q25; }
};

/// Linear-interpolation quantile (numpy's default) of unsorted values.
/// Throws kEmptyInput.
double quantile(std::vector<double> values, double q);
QuantileSummary quantiles(const std::vector<double>& values);

/// Table-style convention. Throws kEmptyInput.
IterationSummary summarize_iterations(const std::vector<RunRecord>& records);

/// Median and quartiles of the last row's dist_to_ref. Throws kEmptyInput.
QuantileSummary summarize_final_distance(const std::vector<RunRecord>& records);

/// Quantiles of dist_to_ref at every iteration; runs that stopped early
/// contribute their last row.
std::vector<QuantileSummary> distance_quantiles_by_iteration(const std::vector<RunRecord>& records);

struct ProfileResult {
  std::vector<double> thresholds;
  // curves[m][t]: fraction of usable tasks with tau_m <= thresholds[t].
  std::vector<std::vector<double>> curves;
  // tau[i][m] for every usable task i, in input order.
  std::vector<std::vector<double>> tau;
  std::vector<std::size_t> degenerate_tasks;  // indices excluded
};

/// Normalized optimality gap tau = (f_final - f*) / (f_init - f*) with f*
/// the best final cost over methods, clamped to [0, 1]. final_costs[i][m] is
/// method m on task i. Tasks with f_init <= f* are excluded and listed;
/// throws kDegenerateTask if no task is usable and kEmptyInput on empty
/// input.
ProfileResult performance_profile(const std::vector<std::vector<double>>& final_costs,
                                  const std::vector<double>& initial_costs,
                                  const std::vector<double>& thresholds);

/// n + 1 evenly spaced thresholds on [0, 1].
std::vector<double> uniform_thresholds(int n);

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_HARNESS_SUMMARY_HPP_
