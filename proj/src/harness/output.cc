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

#include "guided_mppi/harness/output.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "guided_mppi/core/error.hpp"

namespace guided_mppi {
namespace {

using nlohmann::json;

std::string provider_name(const MethodSpec& m) {
  return m.kind == OptimizerKind::kGuided ? std::string(to_string(m.settings.provider.kind)) : "none";
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::ofstream open_file(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kConfigInvalid, "cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

std::string_view to_string(Convention c) {
  switch (c) {
    case Convention::kTableI: return "table1";
    case Convention::kMedianIqr: return "median_iqr";
    case Convention::kEss: return "ess";
    case Convention::kProfile: return "profile";
  }
  return "unknown";
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw Error(ErrorCode::kConfigInvalid, "unknown output format '" + std::string(name) + "'");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

SummaryTable build_summary(const ExperimentConfig& config, const ExperimentResult& result,
                           Convention convention) {
  SummaryTable table;
  table.experiment = config.experiment;
  table.config_hash = config.hash;
  table.convention = convention;
  table.seeds = config.seeds.size();

  for (std::size_t t = 0; t < config.tasks.size(); ++t) {
    const TaskSpec& task = config.tasks[t];
    for (std::size_t m = 0; m < task.methods.size(); ++m) {
      for (int n : config.samples) {
        SummaryEntry e;
        e.task = task.label;
        e.problem = task.problem.name;
        e.optimizer = task.methods[m].label;
        e.provider = provider_name(task.methods[m]);
        e.num_samples = n;
        std::vector<RunRecord> records;
        for (const RunResult& r : result.runs) {
          if (r.task != t || r.method != m || r.num_samples != n) continue;
          if (r.error) {
            ++e.errors;
          } else {
            records.push_back(r.record);
          }
        }
        e.runs = records.size();
        if (!records.empty()) {
          e.iterations = summarize_iterations(records);
          if (result.tasks[t].reference) e.final_distance = summarize_final_distance(records);
          double first = 0.0, all = 0.0;
          std::size_t first_n = 0, all_n = 0;
          std::vector<double> finals;
          for (const RunRecord& rec : records) {
            for (std::size_t k = 1; k < rec.rows.size(); ++k) {
              if (k == 1) {
                first += rec.rows[k].ess;
                ++first_n;
              }
              all += rec.rows[k].ess;
              ++all_n;
            }
            finals.push_back(rec.rows.back().cost);
          }
          e.mean_first_ess = first_n ? first / static_cast<double>(first_n) : std::nan("");
          e.mean_ess = all_n ? all / static_cast<double>(all_n) : std::nan("");
          e.median_final_cost = quantile(finals, 0.5);
        }
        table.entries.push_back(std::move(e));
      }
    }
  }

  if (convention == Convention::kProfile) {
    for (const MethodSpec& m : config.tasks.front().methods) table.profile_methods.push_back(m.label);
    for (const TaskSpec& task : config.tasks) {
      bool same = task.methods.size() == table.profile_methods.size();
      for (std::size_t m = 0; same && m < task.methods.size(); ++m) {
        same = task.methods[m].label == table.profile_methods[m];
      }
      if (!same) throw Error(ErrorCode::kConfigInvalid, "profile tasks must share one method list");
    }
    std::vector<std::vector<double>> finals;
    std::vector<double> initials;
    for (std::size_t t = 0; t < config.tasks.size(); ++t) {
      for (int n : config.samples) {
        for (std::uint64_t seed : config.seeds) {
          std::vector<double> row;
          double init = 0.0;
          for (std::size_t m = 0; m < table.profile_methods.size(); ++m) {
            for (const RunResult& r : result.runs) {
              if (r.task == t && r.method == m && r.num_samples == n && r.seed == seed && !r.error) {
                row.push_back(r.record.rows.back().cost);
                init = r.record.rows.front().cost;
              }
            }
          }
          if (row.size() == table.profile_methods.size()) {
            finals.push_back(std::move(row));
            initials.push_back(init);
          }
        }
      }
    }
    table.profile = performance_profile(finals, initials, uniform_thresholds(100));
  }
  return table;
}

void write_runs_csv(std::ostream& out, const ExperimentConfig& config, const ExperimentResult& result) {
  out << kCsvHeader << '\n';
  for (const RunResult& r : result.runs) {
    if (r.error) continue;
    const TaskSpec& task = config.tasks[r.task];
    const MethodSpec& method = task.methods[r.method];
    const std::string prefix = config.experiment + ',' + config.hash + ',' + method.label + ',' +
                               provider_name(method) + ',' + task.label + ',' +
                               std::to_string(r.num_samples) + ',' + std::to_string(r.seed) + ',';
    for (const RunRow& row : r.record.rows) {
      out << prefix << row.iter << ',' << format_double(row.cost) << ',' << format_double(row.ess) << ','
          << format_double(row.dist_to_ref) << ',' << row.f_evals << '\n';
    }
  }
}

void write_runs_json(std::ostream& out, const ExperimentConfig& config, const ExperimentResult& result) {
  json rows = json::array();
  for (const RunResult& r : result.runs) {
    if (r.error) continue;
    const TaskSpec& task = config.tasks[r.task];
    const MethodSpec& method = task.methods[r.method];
    for (const RunRow& row : r.record.rows) {
      rows.push_back({{"experiment", config.experiment},
                      {"config_hash", config.hash},
                      {"optimizer", method.label},
                      {"provider", provider_name(method)},
                      {"problem", task.label},
                      {"N", r.num_samples},
                      {"seed", r.seed},
                      {"iter", row.iter},
                      {"cost", number(row.cost)},
                      {"ess", number(row.ess)},
                      {"dist_to_ref", number(row.dist_to_ref)},
                      {"f_evals", row.f_evals}});
    }
  }
  out << rows.dump(1) << '\n';
}

void write_summary_json(std::ostream& out, const SummaryTable& table, const ExperimentResult& result) {
  json j;
  j["experiment"] = table.experiment;
  j["config_hash"] = table.config_hash;
  j["convention"] = std::string(to_string(table.convention));
  j["seeds"] = table.seeds;
  json entries = json::array();
  for (const SummaryEntry& e : table.entries) {
    json x = {{"task", e.task},
              {"problem", e.problem},
              {"optimizer", e.optimizer},
              {"provider", e.provider},
              {"N", e.num_samples},
              {"runs", e.runs},
              {"errors", e.errors},
              {"failures", e.iterations.failures},
              {"mean_iterations", number(e.iterations.mean)},
              {"std_iterations", number(e.iterations.std)},
              {"mean_first_ess", number(e.mean_first_ess)},
              {"mean_ess", number(e.mean_ess)},
              {"median_final_cost", number(e.median_final_cost)}};
    if (e.final_distance) {
      x["median_final_distance"] = number(e.final_distance->median);
      x["q25_final_distance"] = number(e.final_distance->q25);
      x["q75_final_distance"] = number(e.final_distance->q75);
      x["iqr_final_distance"] = number(e.final_distance->iqr());
    }
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);

  json refs = json::array();
  for (std::size_t t = 0; t < result.tasks.size(); ++t) {
    const auto& nw = result.tasks[t].newton;
    if (!nw) continue;
    refs.push_back({{"task_index", t},
                    {"converged", nw->converged},
                    {"iterations", nw->iterations},
                    {"value", number(nw->value)},
                    {"grad_inf", number(nw->grad_inf)}});
  }
  j["newton_references"] = std::move(refs);

  json errors = json::array();
  for (const RunResult& r : result.runs) {
    if (r.error) errors.push_back({{"task_index", r.task}, {"method_index", r.method}, {"N", r.num_samples},
                                   {"seed", r.seed}, {"message", *r.error}});
  }
  j["errors"] = std::move(errors);

  if (table.profile) {
    j["profile"] = {{"methods", table.profile_methods},
                    {"thresholds", table.profile->thresholds},
                    {"curves", table.profile->curves},
                    {"instances", table.profile->tau.size()},
                    {"degenerate_instances", table.profile->degenerate_tasks.size()}};
  }
  out << j.dump(2) << '\n';
}

void write_median_iqr_csv(std::ostream& out, const ExperimentConfig& config, const ExperimentResult& result) {
  out << "experiment,config_hash,optimizer,provider,problem,N,iter,median,q25,q75\n";
  for (std::size_t t = 0; t < config.tasks.size(); ++t) {
    if (!result.tasks[t].reference) continue;
    const TaskSpec& task = config.tasks[t];
    for (std::size_t m = 0; m < task.methods.size(); ++m) {
      for (int n : config.samples) {
        std::vector<RunRecord> records;
        for (const RunResult* r : result.select(t, m, n)) records.push_back(r->record);
        if (records.empty()) continue;
        const auto qs = distance_quantiles_by_iteration(records);
        for (std::size_t k = 0; k < qs.size(); ++k) {
          out << config.experiment << ',' << config.hash << ',' << task.methods[m].label << ','
              << provider_name(task.methods[m]) << ',' << task.label << ',' << n << ',' << k << ','
              << format_double(qs[k].median) << ',' << format_double(qs[k].q25) << ','
              << format_double(qs[k].q75) << '\n';
        }
      }
    }
  }
}

void write_profile_csv(std::ostream& out, const SummaryTable& table) {
  if (!table.profile) return;
  out << "experiment,config_hash,optimizer,threshold,fraction\n";
  for (std::size_t m = 0; m < table.profile_methods.size(); ++m) {
    for (std::size_t i = 0; i < table.profile->thresholds.size(); ++i) {
      out << table.experiment << ',' << table.config_hash << ',' << table.profile_methods[m] << ','
          << format_double(table.profile->thresholds[i]) << ','
          << format_double(table.profile->curves[m][i]) << '\n';
    }
  }
}

void print_summary(std::ostream& out, const SummaryTable& table) {
  out << table.experiment << " (config " << table.config_hash << ", " << table.seeds << " seeds)\n";
  const auto flags = out.flags();
  for (const SummaryEntry& e : table.entries) {
    out << "  " << std::left << std::setw(20) << e.task << std::setw(16) << e.optimizer << std::setw(14)
        << e.provider << "N=" << std::setw(6) << e.num_samples << std::right;
    switch (table.convention) {
      case Convention::kTableI:
        out << std::fixed << std::setprecision(2) << e.iterations.mean << " +- " << e.iterations.std << " ("
            << e.iterations.failures << ")";
        break;
      case Convention::kMedianIqr:
        if (e.final_distance) {
          out << std::scientific << std::setprecision(3) << "median " << e.final_distance->median << "  IQR "
              << e.final_distance->iqr();
        }
        break;
      case Convention::kEss:
        out << std::fixed << std::setprecision(2) << "ESS(iter 1) " << e.mean_first_ess << "  ESS(all) "
            << e.mean_ess;
        break;
      case Convention::kProfile:
        out << std::scientific << std::setprecision(3) << "median final cost " << e.median_final_cost;
        break;
    }
    if (e.errors) out << "  [" << e.errors << " errors]";
    out << '\n';
    out.flags(flags);
  }
  if (table.profile) {
    out << "  profile over " << table.profile->tau.size() << " instances ("
        << table.profile->degenerate_tasks.size() << " degenerate excluded)\n";
    for (std::size_t m = 0; m < table.profile_methods.size(); ++m) {
      out << "    " << std::left << std::setw(16) << table.profile_methods[m] << std::right;
      for (std::size_t i = 0; i < table.profile->thresholds.size(); i += 25) {
        out << " tau<=" << format_double(table.profile->thresholds[i]) << ":"
            << format_double(table.profile->curves[m][i]);
      }
      out << '\n';
    }
  }
  out.flags(flags);
}

std::vector<std::string> write_outputs(const std::string& dir, OutputFormat format,
                                       const ExperimentConfig& config, const ExperimentResult& result,
                                       const SummaryTable& table) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorCode::kConfigInvalid, "cannot create output directory '" + dir + "'");
  }
  const fs::path base = fs::path(dir) / config.experiment;
  std::vector<std::string> written;
  auto emit = [&](const std::string& suffix, auto&& body) {
    const fs::path path = base.string() + suffix;
    auto out = open_file(path);
    body(out);
    written.push_back(path.string());
  };
  if (format == OutputFormat::kCsv) {
    emit(".csv", [&](std::ostream& o) { write_runs_csv(o, config, result); });
  } else {
    emit("_runs.json", [&](std::ostream& o) { write_runs_json(o, config, result); });
  }
  emit("_summary.json", [&](std::ostream& o) { write_summary_json(o, table, result); });
  if (table.convention == Convention::kMedianIqr) {
    emit("_median_iqr.csv", [&](std::ostream& o) { write_median_iqr_csv(o, config, result); });
  }
  if (table.profile) {
    emit("_profile.csv", [&](std::ostream& o) { write_profile_csv(o, table); });
  }
  return written;
}

}  // namespace guided_mppi
