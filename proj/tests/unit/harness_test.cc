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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include "guided_mppi/core/error.hpp"
#include "guided_mppi/harness/cli.hpp"
#include "guided_mppi/harness/config.hpp"
#include "guided_mppi/harness/experiment.hpp"
#include "guided_mppi/harness/output.hpp"
#include "guided_mppi/harness/summary.hpp"

namespace guided_mppi {
namespace {

namespace fs = std::filesystem;

RunRecord record(std::optional<int> converged_at, std::vector<double> distances = {}) {
  RunRecord r;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    RunRow row;
    row.iter = static_cast<int>(i);
    row.dist_to_ref = distances[i];
    r.rows.push_back(row);
  }
  r.converged = converged_at.has_value();
  r.converged_iter = converged_at;
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A fresh directory under the system temp dir, removed on destruction.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("guided_mppi_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const char* kSmallConfig = R"({
  "experiment": "small",
  "seeds": 3,
  "samples": [10, 20],
  "max_iters": 15,
  "stop": {"distance_tol": 0.05},
  "tasks": [
    {"label": "rb", "problem": {"name": "rosenbrock"},
     "methods": [
       {"label": "guided", "optimizer": "guided", "provider": "exact", "lambda": 0.01},
       {"label": "vanilla", "optimizer": "vanilla", "lambda": 0.01}
     ]},
    {"label": "st", "problem": {"name": "styblinski_tang", "start": [0.5, 0.5]},
     "methods": [
       {"label": "guided", "optimizer": "guided", "provider": "bfgs", "lambda": 0.01},
       {"label": "vanilla", "optimizer": "vanilla", "lambda": 0.01}
     ]}
  ]
})";

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli_main(args, GUIDED_MPPI_CONFIG_DIR, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

TEST(Summary, AllConvergeAtSameIteration) {
  const std::vector<RunRecord> rs(5, record(7));
  const IterationSummary s = summarize_iterations(rs);
  EXPECT_EQ(s.runs, 5u);
  EXPECT_EQ(s.failures, 0u);
  EXPECT_EQ(s.mean, 7.0);
  EXPECT_EQ(s.std, 0.0);
}

TEST(Summary, MeanAndSampleStd) {
  const IterationSummary s = summarize_iterations({record(2), record(4)});
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_DOUBLE_EQ(s.std, std::sqrt(2.0));
  const IterationSummary one = summarize_iterations({record(5), record(std::nullopt)});
  EXPECT_EQ(one.mean, 5.0);
  EXPECT_EQ(one.std, 0.0);
}

TEST(Summary, FailuresExcludedFromMean) {
  std::vector<RunRecord> rs(9, record(10));
  rs.push_back(record(std::nullopt));
  const IterationSummary s = summarize_iterations(rs);
  EXPECT_EQ(s.runs, 10u);
  EXPECT_EQ(s.failures, 1u);
  EXPECT_EQ(s.mean, 10.0);
  EXPECT_EQ(s.converged_within(rs, 10), 9u);
  EXPECT_EQ(s.converged_within(rs, 9), 0u);
  EXPECT_TRUE(std::isnan(summarize_iterations({record(std::nullopt)}).mean));
}

TEST(Summary, Quantiles) {
  EXPECT_EQ(quantile({3.0, 1.0, 2.0}, 0.5), 2.0);
  EXPECT_EQ(quantile({1.0, 2.0, 3.0, 4.0}, 0.5), 2.5);
  EXPECT_EQ(quantile({1.0, 2.0, 3.0, 4.0, 5.0}, 0.25), 2.0);
  EXPECT_DOUBLE_EQ(quantile({1.0, 2.0, 3.0, 4.0}, 0.25), 1.75);
  EXPECT_EQ(quantile({4.0}, 0.75), 4.0);
  EXPECT_THROW(quantile({}, 0.5), Error);
  const QuantileSummary q = quantiles({1.0, 2.0, 3.0, 4.0, 5.0});
  EXPECT_EQ(q.median, 3.0);
  EXPECT_EQ(q.iqr(), 2.0);
}

TEST(Summary, DistanceByIterationHoldsLastRow) {
  const std::vector<RunRecord> rs = {record(1, {4.0, 0.01}), record(std::nullopt, {4.0, 2.0, 1.0})};
  const auto q = distance_quantiles_by_iteration(rs);
  ASSERT_EQ(q.size(), 3u);
  EXPECT_EQ(q[0].median, 4.0);
  EXPECT_DOUBLE_EQ(q[2].median, 0.505);
  EXPECT_DOUBLE_EQ(summarize_final_distance(rs).median, 0.505);
}

TEST(Profile, AllMethodsReachOptimum) {
  const ProfileResult p = performance_profile({{0.0, 0.0}, {0.0, 0.0}}, {5.0, 3.0}, uniform_thresholds(11));
  for (const auto& curve : p.curves) {
    for (double v : curve) EXPECT_EQ(v, 1.0);
  }
}

TEST(Profile, NeverImprovingHasTauOne) {
  // Method 0 ends where it started; method 1 defines f*.
  const ProfileResult p = performance_profile({{5.0, 1.0}, {7.0, 0.0}}, {5.0, 3.0}, uniform_thresholds(11));
  EXPECT_EQ(p.tau[0][0], 1.0);
  EXPECT_EQ(p.tau[1][0], 1.0);  // worse than the start clamps to 1
  for (double v : p.curves[1]) EXPECT_EQ(v, 1.0);
  for (std::size_t t = 0; t + 1 < p.thresholds.size(); ++t) EXPECT_EQ(p.curves[0][t], 0.0);
  EXPECT_EQ(p.curves[0].back(), 1.0);
}

TEST(Profile, HandBuiltStepCurves) {
  // Three tasks, f_init = 10, f* = best final per task (1, 2, 0).
  // tau, method 0: 0, 1/8, 0. method 1: 4/9, 0, 1.
  const std::vector<std::vector<double>> finals = {{1.0, 5.0}, {3.0, 2.0}, {0.0, 10.0}};
  const ProfileResult p = performance_profile(finals, {10.0, 10.0, 10.0}, {0.0, 0.1, 0.2, 0.3, 0.5, 1.0});
  EXPECT_DOUBLE_EQ(p.tau[1][0], 0.125);
  EXPECT_DOUBLE_EQ(p.tau[0][1], 4.0 / 9.0);
  const std::vector<double> m0 = {2.0 / 3, 2.0 / 3, 1.0, 1.0, 1.0, 1.0};
  const std::vector<double> m1 = {1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3, 2.0 / 3, 1.0};
  for (std::size_t t = 0; t < m0.size(); ++t) {
    EXPECT_DOUBLE_EQ(p.curves[0][t], m0[t]) << t;
    EXPECT_DOUBLE_EQ(p.curves[1][t], m1[t]) << t;
  }
}

TEST(Profile, DegenerateTasksExcluded) {
  // Task 1 starts at the best attainable value.
  const ProfileResult p = performance_profile({{0.0, 1.0}, {4.0, 4.0}}, {2.0, 4.0}, uniform_thresholds(3));
  ASSERT_EQ(p.degenerate_tasks, std::vector<std::size_t>{1});
  ASSERT_EQ(p.tau.size(), 1u);
  EXPECT_EQ(p.tau[0][1], 0.5);
  try {
    performance_profile({{4.0, 4.0}}, {4.0}, uniform_thresholds(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateTask);
  }
  EXPECT_THROW(performance_profile({}, {}, uniform_thresholds(3)), Error);
  EXPECT_THROW(performance_profile({{1.0}}, {1.0, 2.0}, uniform_thresholds(3)), Error);
}

TEST(Config, ParsesSmallConfig) {
  const ExperimentConfig c = parse_experiment_config(kSmallConfig);
  EXPECT_EQ(c.experiment, "small");
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{0, 1, 2}));
  EXPECT_EQ(c.samples, (std::vector<int>{10, 20}));
  ASSERT_EQ(c.tasks.size(), 2u);
  EXPECT_EQ(c.method_count(), 4u);
  EXPECT_EQ(c.hash.size(), 16u);
  EXPECT_EQ(c.hash, parse_experiment_config(kSmallConfig).hash);
}

TEST(Config, OverridesChangeHash) {
  const ExperimentConfig base = parse_experiment_config(kSmallConfig);
  ConfigOverrides o;
  o.seeds = std::vector<std::uint64_t>{4};
  const ExperimentConfig seeds = parse_experiment_config(kSmallConfig, o);
  EXPECT_EQ(seeds.seeds, std::vector<std::uint64_t>{4});
  EXPECT_NE(seeds.hash, base.hash);
  ConfigOverrides n;
  n.samples = std::vector<int>{7};
  EXPECT_NE(parse_experiment_config(kSmallConfig, n).hash, base.hash);
}

TEST(Config, RejectsInvalid) {
  const std::vector<std::string> bad = {
      "not json",
      R"({"experiment": "x", "seeds": 1, "samples": 10, "tasks": []})",
      R"({"experiment": "x", "seeds": 1, "samples": 10, "bogus": 1,
          "tasks": [{"label": "a", "problem": {"name": "rosenbrock"}, "methods": [{"label": "m", "optimizer": "vanilla"}]}]})",
      R"({"experiment": "x", "seeds": 1, "samples": 10,
          "tasks": [{"label": "a", "problem": {"name": "himmelblau"}, "methods": [{"label": "m", "optimizer": "vanilla"}]}]})",
      R"({"experiment": "x", "seeds": 1, "samples": 0,
          "tasks": [{"label": "a", "problem": {"name": "rosenbrock"}, "methods": [{"label": "m", "optimizer": "vanilla"}]}]})",
      R"({"experiment": "x", "seeds": 1, "samples": 10,
          "tasks": [{"label": "a", "problem": {"name": "rosenbrock"}, "methods": [{"label": "m", "optimizer": "vanilla", "lambda": -1}]}]})",
      R"({"experiment": "x", "seeds": 1, "samples": 10,
          "tasks": [{"label": "a", "problem": {"name": "rosenbrock"}, "methods": [{"label": "m", "optimizer": "vanilla", "provider": "exact"}]}]})",
      R"({"experiment": "x", "seeds": 1, "samples": 10,
          "tasks": [{"label": "a", "problem": {"name": "rosenbrock"}, "methods": [{"label": "m", "optimizer": "vanilla"}, {"label": "m", "optimizer": "cem"}]}]})",
      R"({"experiment": "x", "seeds": 1, "samples": 10, "stop": {"distance_tol": 0.1},
          "tasks": [{"label": "a", "problem": {"name": "rosenbrock", "reference": "none"}, "methods": [{"label": "m", "optimizer": "vanilla"}]}]})",
  };
  for (const std::string& text : bad) {
    try {
      parse_experiment_config(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfigInvalid) << text;
    }
  }
}

TEST(Config, ShippedConfigsParse) {
  for (const auto& entry : fs::directory_iterator(GUIDED_MPPI_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    const ExperimentConfig c = load_experiment_config(entry.path().string());
    EXPECT_EQ(c.experiment, entry.path().stem().string());
  }
}

TEST(Experiment, OrderIndependentOfJobs) {
  const ExperimentConfig c = parse_experiment_config(kSmallConfig);
  const ExperimentResult one = run_experiment(c, 1);
  const ExperimentResult four = run_experiment(c, 4);
  ASSERT_TRUE(one.ok());
  std::ostringstream a, b;
  write_runs_csv(a, c, one);
  write_runs_csv(b, c, four);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(one.runs.size(), 2u * 2u * 2u * 3u);
  EXPECT_EQ(one.select(0, 1, 20).size(), 3u);
}

TEST(Output, CsvHeaderAndRows) {
  const ExperimentConfig c = parse_experiment_config(kSmallConfig);
  const ExperimentResult r = run_experiment(c, 1);
  std::ostringstream csv;
  write_runs_csv(csv, c, r);
  std::istringstream lines(csv.str());
  std::string header, row;
  std::getline(lines, header);
  EXPECT_EQ(header, "experiment,config_hash,optimizer,provider,problem,N,seed,iter,cost,ess,dist_to_ref,f_evals");
  std::getline(lines, row);
  EXPECT_EQ(row.rfind("small," + c.hash + ",guided,exact,rb,10,0,0,", 0), 0u) << row;
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(0.1), "0.1");
}

TEST(Cli, ExitCodes) {
  std::string err;
  EXPECT_EQ(run_cli({"bench-nothing"}, nullptr, &err), kExitConfigError);
  EXPECT_EQ(run_cli({}), kExitConfigError);
  EXPECT_EQ(run_cli({"bench-static", "--format", "xml"}), kExitConfigError);
  EXPECT_EQ(run_cli({"bench-static", "--config", "/nonexistent/x.json"}), kExitConfigError);
  EXPECT_EQ(run_cli({"bench-static", "--samples", "ten"}), kExitConfigError);
  TempDir dir("cli_bad");
  const fs::path cfg = dir.path / "bad.json";
  std::ofstream(cfg) << R"({"experiment": "bad"})";
  EXPECT_EQ(run_cli({"bench-static", "--config", cfg.string()}), kExitConfigError);
}

TEST(Cli, RunErrorExitCode) {
  // Passes config validation; CEM with one elite fails at run time.
  TempDir dir("cli_run_error");
  const fs::path cfg = dir.path / "cem_small.json";
  std::ofstream(cfg) << R"({"experiment": "cem_small", "seeds": 1, "samples": 5, "max_iters": 2,
    "tasks": [{"label": "rb", "problem": {"name": "rosenbrock"},
               "methods": [{"label": "cem", "optimizer": "cem", "cem": {"elite_frac": 0.2}}]}]})";
  std::string err;
  EXPECT_EQ(run_cli({"bench-static", "--config", cfg.string(), "--out", (dir.path / "o").string()}, nullptr, &err),
            kExitRunError);
  EXPECT_NE(err.find("elite"), std::string::npos) << err;
}

TEST(Cli, WritesDeterministicOutputsAndHonorsEnvOverride) {
  TempDir dir("cli_out");
  const fs::path cfg = dir.path / "small.json";
  std::ofstream(cfg) << kSmallConfig;
  const fs::path a = dir.path / "a", b = dir.path / "b", env = dir.path / "env";
  ASSERT_EQ(run_cli({"bench-static", "--config", cfg.string(), "--out", a.string(), "--jobs", "1"}), kExitOk);
  ASSERT_EQ(run_cli({"bench-static", "--config", cfg.string(), "--out", b.string(), "--jobs", "4"}), kExitOk);
  EXPECT_EQ(read_file(a / "small.csv"), read_file(b / "small.csv"));
  EXPECT_FALSE(read_file(a / "small.csv").empty());
  EXPECT_EQ(read_file(a / "small_summary.json"), read_file(b / "small_summary.json"));

  ::setenv("MPPI_GUIDED_OUT", env.string().c_str(), 1);
  const int code = run_cli({"bench-static", "--config", cfg.string(), "--out", a.string(), "--format", "json"});
  ::unsetenv("MPPI_GUIDED_OUT");
  ASSERT_EQ(code, kExitOk);
  EXPECT_TRUE(fs::exists(env / "small_runs.json"));
  EXPECT_TRUE(fs::exists(env / "small_summary.json"));
  EXPECT_FALSE(fs::exists(a / "small_runs.json"));
}

TEST(Cli, SeedAndSampleOverrides) {
  TempDir dir("cli_override");
  const fs::path cfg = dir.path / "small.json";
  std::ofstream(cfg) << kSmallConfig;
  ASSERT_EQ(run_cli({"bench-static", "--config", cfg.string(), "--out", dir.path.string(), "--seeds", "2",
                     "--samples", "12"}),
            kExitOk);
  std::istringstream lines(read_file(dir.path / "small.csv"));
  std::string line;
  std::getline(lines, line);
  std::set<std::string> ns, seeds;
  while (std::getline(lines, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    ns.insert(f[5]);
    seeds.insert(f[6]);
  }
  EXPECT_EQ(ns, std::set<std::string>{"12"});
  EXPECT_EQ(seeds, (std::set<std::string>{"0", "1"}));
}

}  // namespace
}  // namespace guided_mppi
