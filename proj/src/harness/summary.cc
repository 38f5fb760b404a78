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

#include "guided_mppi/harness/summary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "guided_mppi/core/error.hpp"

namespace guided_mppi {

std::size_t IterationSummary::converged_within(const std::vector<RunRecord>& records,
                                               int within) const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [&](const RunRecord& r) {
    return r.converged_iter && *r.converged_iter <= within;
  }));
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  if (frac == 0.0) return values[lo];
  return values[lo] + frac * (values[hi] - values[lo]);
}

QuantileSummary quantiles(const std::vector<double>& values) {
  return {quantile(values, 0.5), quantile(values, 0.25), quantile(values, 0.75)};
}

IterationSummary summarize_iterations(const std::vector<RunRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "no runs to summarize");
  IterationSummary out;
  out.runs = records.size();
  std::vector<double> its;
  for (const RunRecord& r : records) {
    if (r.converged_iter) {
      its.push_back(*r.converged_iter);
    } else {
      ++out.failures;
    }
  }
  if (its.empty()) {
    out.mean = std::numeric_limits<double>::quiet_NaN();
    out.std = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  double sum = 0.0;
  for (double v : its) sum += v;
  out.mean = sum / static_cast<double>(its.size());
  if (its.size() > 1) {
    double ss = 0.0;
    for (double v : its) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(its.size() - 1));
  }
  return out;
}

QuantileSummary summarize_final_distance(const std::vector<RunRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "no runs to summarize");
  std::vector<double> finals;
  for (const RunRecord& r : records) {
    if (r.rows.empty()) throw Error(ErrorCode::kEmptyInput, "run without rows");
    finals.push_back(r.rows.back().dist_to_ref);
  }
  return quantiles(finals);
}

std::vector<QuantileSummary> distance_quantiles_by_iteration(const std::vector<RunRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "no runs to summarize");
  std::size_t longest = 0;
  for (const RunRecord& r : records) {
    if (r.rows.empty()) throw Error(ErrorCode::kEmptyInput, "run without rows");
    longest = std::max(longest, r.rows.size());
  }
  std::vector<QuantileSummary> out;
  out.reserve(longest);
  std::vector<double> column(records.size());
  for (std::size_t k = 0; k < longest; ++k) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& rows = records[i].rows;
      column[i] = rows[std::min(k, rows.size() - 1)].dist_to_ref;
    }
    out.push_back(quantiles(column));
  }
  return out;
}

ProfileResult performance_profile(const std::vector<std::vector<double>>& final_costs,
                                  const std::vector<double>& initial_costs,
                                  const std::vector<double>& thresholds) {
  if (final_costs.empty() || thresholds.empty()) {
    throw Error(ErrorCode::kEmptyInput, "performance profile needs tasks and thresholds");
  }
  if (final_costs.size() != initial_costs.size()) {
    throw Error(ErrorCode::kLengthMismatch, "one initial cost per task is required");
  }
  const std::size_t methods = final_costs.front().size();
  if (methods == 0) throw Error(ErrorCode::kEmptyInput, "no methods");

  ProfileResult out;
  out.thresholds = thresholds;
  for (std::size_t i = 0; i < final_costs.size(); ++i) {
    const auto& row = final_costs[i];
    if (row.size() != methods) {
      throw Error(ErrorCode::kLengthMismatch, "task " + std::to_string(i) + " has a different method count");
    }
    const double best = *std::min_element(row.begin(), row.end());
    const double span = initial_costs[i] - best;
    if (!(span > 0.0)) {
      out.degenerate_tasks.push_back(i);
      continue;
    }
    std::vector<double> tau(methods);
    for (std::size_t m = 0; m < methods; ++m) {
      tau[m] = std::clamp((row[m] - best) / span, 0.0, 1.0);
    }
    out.tau.push_back(std::move(tau));
  }
  if (out.tau.empty()) {
    throw Error(ErrorCode::kDegenerateTask, "every task has f_init == f*");
  }
  const double usable = static_cast<double>(out.tau.size());
  out.curves.assign(methods, std::vector<double>(thresholds.size(), 0.0));
  for (std::size_t m = 0; m < methods; ++m) {
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      std::size_t hits = 0;
      for (const auto& tau : out.tau) hits += tau[m] <= thresholds[t] ? 1 : 0;
      out.curves[m][t] = static_cast<double>(hits) / usable;
    }
  }
  return out;
}

std::vector<double> uniform_thresholds(int n) {
  if (n < 1) throw Error(ErrorCode::kConfigInvalid, "threshold grid needs n >= 1");
  std::vector<double> out(n + 1);
  for (int i = 0; i <= n; ++i) out[i] = static_cast<double>(i) / n;
  return out;
}

}  // namespace guided_mppi
