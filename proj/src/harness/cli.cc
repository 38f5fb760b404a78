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

#include "guided_mppi/harness/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "guided_mppi/core/error.hpp"
#include "guided_mppi/harness/output.hpp"

namespace guided_mppi {
namespace {

struct Subcommand {
  const char* name;
  const char* config;
  Convention convention;
  const char* help;
};

constexpr Subcommand kSubcommands[] = {
    {"bench-static", "table1.json", Convention::kTableI, "iterations to threshold on the static benchmarks"},
    {"bench-cartpole", "fig3_cartpole.json", Convention::kMedianIqr, "cart-pole sweep over the sample budget"},
    {"bench-hessians", "fig5_hessians.json", Convention::kMedianIqr, "cart-pole with approximate Hessians"},
    {"bench-ess", "fig1_ess.json", Convention::kEss, "effective sample size on the narrow valley"},
    {"bench-coarse-fine", "coarse_fine_rastrigin.json", Convention::kTableI,
     "Rastrigin with a coarse-to-fine smoothing schedule"},
    {"profile", "profile.json", Convention::kProfile, "normalized optimality gap profile over a task list"},
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    T value{};
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    const auto res = std::from_chars(first, last, value);
    if (first == last || res.ec != std::errc() || res.ptr != last) {
      throw Error(ErrorCode::kConfigInvalid, std::string("bad ") + what + " list '" + text + "'");
    }
    out.push_back(value);
    pos = end + 1;
  }
  return out;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, const std::string& config_dir, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Model-guided MPPI experiment runner", "guided_mppi"};
  app.require_subcommand(1);

  std::string config_path, seeds, samples, out_dir = "results", format = "csv";
  int jobs = 1;
  int max_iters = -1;
  std::map<CLI::App*, const Subcommand*> lookup;
  for (const Subcommand& s : kSubcommands) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--config", config_path, "experiment JSON (default: configs/" + std::string(s.config) + ")");
    sub->add_option("--seeds", seeds, "seed count, or a comma-separated seed list");
    sub->add_option("--samples", samples, "comma-separated sample budgets N");
    sub->add_option("--max-iters", max_iters, "iteration cap for every task");
    sub->add_option("--out", out_dir, "output directory (MPPI_GUIDED_OUT takes precedence)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", jobs, "parallel runs")->check(CLI::PositiveNumber);
    lookup[sub] = &s;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfigError;
  }

  const Subcommand* cmd = lookup.at(app.get_subcommands().front());
  if (const char* env = std::getenv("MPPI_GUIDED_OUT"); env && *env) out_dir = env;
  if (config_path.empty()) config_path = (std::filesystem::path(config_dir) / cmd->config).string();

  ExperimentConfig config;
  OutputFormat fmt;
  try {
    ConfigOverrides overrides;
    if (!seeds.empty()) {
      auto list = parse_list<std::uint64_t>(seeds, "seed");
      if (list.size() == 1 && seeds.find(',') == std::string::npos) {
        if (list[0] == 0) throw Error(ErrorCode::kConfigInvalid, "--seeds count must be >= 1");
        const std::uint64_t n = list[0];
        list.clear();
        for (std::uint64_t s = 0; s < n; ++s) list.push_back(s);
      }
      overrides.seeds = list;
    }
    if (!samples.empty()) overrides.samples = parse_list<int>(samples, "sample");
    if (max_iters >= 0) overrides.max_iters = max_iters;
    config = load_experiment_config(config_path, overrides);
    fmt = parse_output_format(format);
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  ExperimentResult result;
  try {
    result = run_experiment(config, jobs);
  } catch (const Error& e) {
    err << (e.code() == ErrorCode::kConfigInvalid ? "config error: " : "run error: ") << e.what() << '\n';
    return e.code() == ErrorCode::kConfigInvalid ? kExitConfigError : kExitRunError;
  } catch (const std::exception& e) {
    err << "run error: " << e.what() << '\n';
    return kExitRunError;
  }

  int code = kExitOk;
  for (const RunResult& r : result.runs) {
    if (r.error) {
      err << "run error: task " << config.tasks[r.task].label << ", method "
          << config.tasks[r.task].methods[r.method].label << ", N=" << r.num_samples << ", seed " << r.seed
          << ": " << *r.error << '\n';
      code = kExitRunError;
    }
  }

  try {
    const SummaryTable table = build_summary(config, result, cmd->convention);
    for (const std::string& path : write_outputs(out_dir, fmt, config, result, table)) {
      err << "wrote " << path << '\n';
    }
    print_summary(out, table);
  } catch (const Error& e) {
    err << (e.code() == ErrorCode::kConfigInvalid ? "config error: " : "run error: ") << e.what() << '\n';
    // Keep the per-iteration rows even when the summary cannot be built.
    try {
      std::filesystem::create_directories(out_dir);
      std::ofstream partial(std::filesystem::path(out_dir) / (config.experiment + ".csv"), std::ios::binary);
      write_runs_csv(partial, config, result);
    } catch (...) {
    }
    return e.code() == ErrorCode::kConfigInvalid ? kExitConfigError : kExitRunError;
  }
  return code;
}

}  // namespace guided_mppi
