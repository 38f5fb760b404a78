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

#ifndef GUIDED_MPPI_HARNESS_OUTPUT_HPP_
#define GUIDED_MPPI_HARNESS_OUTPUT_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "guided_mppi/harness/experiment.hpp"
#include "guided_mppi/harness/summary.hpp"

namespace guided_mppi {

enum class Convention { kTableI, kMedianIqr, kEss, kProfile };
enum class OutputFormat { kCsv, kJson };

std::string_view to_string(Convention c);
OutputFormat parse_output_format(std::string_view name);

inline constexpr const char* kCsvHeader =
    "experiment,config_hash,optimizer,provider,problem,N,seed,iter,cost,ess,dist_to_ref,f_evals";

struct SummaryEntry {
  std::string task;
  std::string problem;
  std::string optimizer;  // method label
  std::string provider;   // "none" for vanilla and CEM
  int num_samples = 0;
  std::size_t runs = 0;    // runs that completed
  std::size_t errors = 0;  // runs that threw
  IterationSummary iterations;
  std::optional<QuantileSummary> final_distance;
  double mean_first_ess = 0.0;  // ESS of iteration 1, averaged over seeds
  double mean_ess = 0.0;        // over all iterations and seeds
  double median_final_cost = 0.0;
};

struct SummaryTable {
  std::string experiment;
  std::string config_hash;
  Convention convention = Convention::kTableI;
  std::size_t seeds = 0;
  std::vector<SummaryEntry> entries;
  std::vector<std::string> profile_methods;
  std::optional<ProfileResult> profile;
};

/// Profile instances are (task, N, seed); every task must list the same
/// method labels in the same order (kConfigInvalid otherwise).
SummaryTable build_summary(const ExperimentConfig& config, const ExperimentResult& result,
                           Convention convention);

/// Shortest round-trip decimal form; "nan" and "inf" for non-finite values.
std::string format_double(double v);

void write_runs_csv(std::ostream& out, const ExperimentConfig& config, const ExperimentResult& result);
void write_runs_json(std::ostream& out, const ExperimentConfig& config, const ExperimentResult& result);
void write_summary_json(std::ostream& out, const SummaryTable& table, const ExperimentResult& result);
// Per (task, method, N, iter) median and quartiles of dist_to_ref.
void write_median_iqr_csv(std::ostream& out, const ExperimentConfig& config, const ExperimentResult& result);
void write_profile_csv(std::ostream& out, const SummaryTable& table);
// Human-readable table on stdout.
void print_summary(std::ostream& out, const SummaryTable& table);

/// Writes every output file for `convention` into `dir` and returns their
/// paths. Throws kConfigInvalid when the directory cannot be created.
std::vector<std::string> write_outputs(const std::string& dir, OutputFormat format,
                                       const ExperimentConfig& config, const ExperimentResult& result,
                                       const SummaryTable& table);

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_HARNESS_OUTPUT_HPP_
