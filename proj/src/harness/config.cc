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

#include "guided_mppi/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "guided_mppi/core/error.hpp"
#include "guided_mppi/problems/static_benchmarks.hpp"

namespace guided_mppi {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kConfigInvalid, where + ": " + what);
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      fail(where, "unknown key '" + item.key() + "'");
    }
  }
}

template <typename T>
T get(const json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(where + "." + key, e.what());
  }
}

template <typename T>
void read(const json& obj, const std::string& key, const std::string& where, T& out) {
  if (obj.contains(key)) out = get<T>(obj, key, where);
}

Vector read_vector(const json& value, const std::string& where) {
  if (!value.is_array()) fail(where, "expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(value.size()));
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_number()) fail(where, "expected an array of numbers");
    v[static_cast<Eigen::Index>(i)] = value[i].get<double>();
  }
  return v;
}

CartPoleState read_state(const json& value, const std::string& where) {
  const Vector v = read_vector(value, where);
  if (v.size() != 4) fail(where, "expected 4 entries");
  return {v[0], v[1], v[2], v[3]};
}

StopCriterion read_stop(const json& obj, const std::string& where) {
  check_keys(obj, where, {"distance_tol", "gradient_tol"});
  StopCriterion stop;
  if (obj.contains("distance_tol")) stop.distance_tol = get<double>(obj, "distance_tol", where);
  if (obj.contains("gradient_tol")) stop.gradient_tol = get<double>(obj, "gradient_tol", where);
  return stop;
}

CartPoleSpec read_cartpole(const json& obj, const std::string& where) {
  check_keys(obj, where, {"cart_mass", "pole_mass", "pole_length", "gravity", "horizon", "dt", "r", "q",
                          "q_terminal", "state0", "goal"});
  CartPoleSpec spec;
  read(obj, "cart_mass", where, spec.cart_mass);
  read(obj, "pole_mass", where, spec.pole_mass);
  read(obj, "pole_length", where, spec.pole_length);
  read(obj, "gravity", where, spec.gravity);
  read(obj, "horizon", where, spec.horizon);
  read(obj, "dt", where, spec.dt);
  read(obj, "r", where, spec.r);
  if (obj.contains("q")) spec.q = read_state(obj["q"], where + ".q");
  if (obj.contains("q_terminal")) spec.q_terminal = read_state(obj["q_terminal"], where + ".q_terminal");
  if (obj.contains("state0")) spec.state0 = read_state(obj["state0"], where + ".state0");
  if (obj.contains("goal")) spec.goal = read_state(obj["goal"], where + ".goal");
  try {
    spec.validate();
  } catch (const Error& e) {
    fail(where, e.what());
  }
  return spec;
}

ProblemSpec read_problem(const json& obj, const std::string& where) {
  check_keys(obj, where, {"name", "dim", "start", "curvature", "cartpole", "reference", "newton"});
  ProblemSpec spec;
  spec.name = get<std::string>(obj, "name", where);
  read(obj, "dim", where, spec.dim);
  if (spec.dim < 1) fail(where, "dim must be >= 1");
  read(obj, "curvature", where, spec.curvature);
  if (obj.contains("start")) spec.start = read_vector(obj["start"], where + ".start");
  if (spec.name == "cartpole") {
    spec.cartpole = read_cartpole(obj.value("cartpole", json::object()), where + ".cartpole");
    spec.dim = spec.cartpole.steps();
    spec.reference = ReferenceSource::kNewton;
  } else {
    if (obj.contains("cartpole")) fail(where, "'cartpole' block on a static problem");
    try {
      const BenchmarkKind kind = parse_benchmark_kind(spec.name);
      if (kind == BenchmarkKind::kSinusoidConvex1D) spec.dim = 1;
      if (kind == BenchmarkKind::kNarrowValley2D) spec.dim = 2;
    } catch (const Error& e) {
      fail(where, e.what());
    }
  }
  if (obj.contains("reference")) {
    const json& ref = obj["reference"];
    if (ref.is_array()) {
      spec.reference = ReferenceSource::kExplicit;
      spec.reference_point = read_vector(ref, where + ".reference");
      if (spec.reference_point->size() != spec.dim) fail(where, "reference has the wrong size");
    } else if (ref == "known") {
      spec.reference = ReferenceSource::kKnown;
    } else if (ref == "newton") {
      spec.reference = ReferenceSource::kNewton;
    } else if (ref == "none") {
      spec.reference = ReferenceSource::kNone;
    } else {
      fail(where + ".reference", "expected \"known\", \"newton\", \"none\" or a vector");
    }
  }
  if (obj.contains("newton")) {
    const json& nw = obj["newton"];
    check_keys(nw, where + ".newton", {"tol", "max_iters"});
    read(nw, "tol", where + ".newton", spec.newton_tol);
    read(nw, "max_iters", where + ".newton", spec.newton_max_iters);
  }
  if (spec.start && spec.start->size() != spec.dim) fail(where, "start has the wrong size");
  return spec;
}

MethodSpec read_method(const json& obj, const std::string& where, Eigen::Index dim) {
  check_keys(obj, where,
             {"label", "optimizer", "provider", "formulation", "lambda", "prior_sigma", "alpha_delta",
              "alpha_sigma", "sigma_target_sq", "hess_floor", "prior_variance_ceiling", "smoothing",
              "adam_beta2", "adam_eps", "bfgs_rescale", "cem"});
  MethodSpec m;
  OptimizerConfig& c = m.settings;
  try {
    m.kind = parse_optimizer_kind(obj.value("optimizer", std::string("guided")));
    if (obj.contains("provider")) c.provider.kind = parse_provider_kind(get<std::string>(obj, "provider", where));
    if (obj.contains("formulation")) c.formulation = parse_formulation(get<std::string>(obj, "formulation", where));
  } catch (const Error& e) {
    fail(where, e.what());
  }
  m.label = obj.value("label", std::string(to_string(m.kind)));
  read(obj, "lambda", where, c.guidance.lambda);
  read(obj, "prior_sigma", where, c.prior_sigma);
  read(obj, "alpha_delta", where, c.guidance.alpha_delta);
  read(obj, "alpha_sigma", where, c.guidance.alpha_sigma);
  if (obj.contains("sigma_target_sq")) c.guidance.sigma_target_sq = get<double>(obj, "sigma_target_sq", where);
  read(obj, "hess_floor", where, c.guidance.hess_floor);
  read(obj, "prior_variance_ceiling", where, c.guidance.prior_variance_ceiling);
  read(obj, "adam_beta2", where, c.provider.adam_beta2);
  read(obj, "adam_eps", where, c.provider.adam_eps);
  read(obj, "bfgs_rescale", where, c.provider.bfgs.rescale_on_first_update);

  SmoothingConfig& s = c.provider.smoothing;
  s.num_samples = static_cast<int>(2 * dim);  // default M = 2d
  if (obj.contains("smoothing")) {
    const json& sm = obj["smoothing"];
    const std::string w = where + ".smoothing";
    check_keys(sm, w, {"sigma", "num_samples", "schedule"});
    read(sm, "sigma", w, s.sigma);
    read(sm, "num_samples", w, s.num_samples);
    if (sm.contains("schedule")) {
      if (!sm["schedule"].is_array()) fail(w + ".schedule", "expected an array");
      for (const json& st : sm["schedule"]) {
        check_keys(st, w + ".schedule", {"from", "sigma"});
        s.schedule.push_back({get<int>(st, "from", w + ".schedule"), get<double>(st, "sigma", w + ".schedule")});
      }
    }
  }
  if (obj.contains("cem")) {
    const json& cm = obj["cem"];
    check_keys(cm, where + ".cem", {"elite_frac", "alpha", "jitter"});
    read(cm, "elite_frac", where + ".cem", c.cem.elite_frac);
    read(cm, "alpha", where + ".cem", c.cem.alpha);
    read(cm, "jitter", where + ".cem", c.cem.jitter);
  }
  if (m.kind != OptimizerKind::kGuided && obj.contains("provider")) {
    fail(where, "'provider' only applies to the guided optimizer");
  }
  // Field ranges are checked now so bad configs fail before any run starts.
  try {
    OptimizerConfig probe = c;
    probe.initial_mean = Vector::Zero(dim);
    probe.validate();
  } catch (const Error& e) {
    fail(where, e.what());
  }
  return m;
}

void apply_overrides(json& root, const ConfigOverrides& o) {
  if (o.seeds) root["seeds"] = *o.seeds;
  if (o.samples) root["samples"] = *o.samples;
  if (o.max_iters) {
    root["max_iters"] = *o.max_iters;
    if (root.contains("tasks") && root["tasks"].is_array()) {
      for (json& t : root["tasks"]) {
        if (t.is_object()) t.erase("max_iters");
      }
    }
  }
}

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = kDigits[v & 0xf];
  return out;
}

}  // namespace

std::size_t ExperimentConfig::method_count() const {
  std::size_t n = 0;
  for (const TaskSpec& t : tasks) n += t.methods.size();
  return n;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ExperimentConfig parse_experiment_config(const std::string& text, const ConfigOverrides& overrides) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    fail("config", e.what());
  }
  apply_overrides(root, overrides);
  check_keys(root, "config", {"experiment", "description", "seeds", "samples", "max_iters", "stop", "defaults", "tasks"});

  ExperimentConfig cfg;
  cfg.experiment = get<std::string>(root, "experiment", "config");
  if (cfg.experiment.empty()) fail("config.experiment", "must not be empty");

  const json& seeds = root.contains("seeds") ? root["seeds"] : json(1);
  if (seeds.is_number_integer()) {
    const auto n = seeds.get<std::int64_t>();
    if (n < 1) fail("config.seeds", "count must be >= 1");
    for (std::int64_t s = 0; s < n; ++s) cfg.seeds.push_back(static_cast<std::uint64_t>(s));
  } else if (seeds.is_array() && !seeds.empty()) {
    for (const json& s : seeds) {
      if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
        fail("config.seeds", "seeds must be nonnegative integers");
      }
      cfg.seeds.push_back(s.get<std::uint64_t>());
    }
  } else {
    fail("config.seeds", "expected a positive count or a nonempty list");
  }

  const json& samples = root.contains("samples") ? root["samples"] : json(100);
  if (samples.is_number_integer()) {
    cfg.samples.push_back(samples.get<int>());
  } else if (samples.is_array() && !samples.empty()) {
    for (const json& n : samples) {
      if (!n.is_number_integer()) fail("config.samples", "expected integers");
      cfg.samples.push_back(n.get<int>());
    }
  } else {
    fail("config.samples", "expected an integer or a nonempty list");
  }
  for (int n : cfg.samples) {
    if (n < 1) fail("config.samples", "sample counts must be >= 1");
  }

  int max_iters = 100;
  read(root, "max_iters", "config", max_iters);
  StopCriterion stop;
  if (root.contains("stop")) stop = read_stop(root["stop"], "config.stop");
  const json defaults = root.value("defaults", json::object());
  if (!defaults.is_object()) fail("config.defaults", "expected an object");

  if (!root.contains("tasks") || !root["tasks"].is_array() || root["tasks"].empty()) {
    fail("config.tasks", "expected a nonempty list");
  }
  std::set<std::string> labels;
  for (std::size_t i = 0; i < root["tasks"].size(); ++i) {
    const json& t = root["tasks"][i];
    const std::string where = "config.tasks[" + std::to_string(i) + "]";
    check_keys(t, where, {"label", "problem", "methods", "stop", "max_iters"});
    TaskSpec task;
    if (!t.contains("problem")) fail(where, "missing 'problem'");
    task.problem = read_problem(t["problem"], where + ".problem");
    task.label = t.value("label", task.problem.name);
    if (!labels.insert(task.label).second) fail(where, "duplicate task label '" + task.label + "'");
    task.stop = t.contains("stop") ? read_stop(t["stop"], where + ".stop") : stop;
    task.max_iters = t.value("max_iters", max_iters);
    if (task.max_iters < 0) fail(where, "max_iters must be >= 0");
    if (!t.contains("methods") || !t["methods"].is_array() || t["methods"].empty()) {
      fail(where + ".methods", "expected a nonempty list");
    }
    std::set<std::string> method_labels;
    for (std::size_t j = 0; j < t["methods"].size(); ++j) {
      json merged = defaults;
      merged.merge_patch(t["methods"][j]);
      const std::string mw = where + ".methods[" + std::to_string(j) + "]";
      MethodSpec m = read_method(merged, mw, task.problem.dim);
      if (!method_labels.insert(m.label).second) fail(mw, "duplicate method label '" + m.label + "'");
      task.methods.push_back(std::move(m));
    }
    if (task.stop.distance_tol && task.problem.reference == ReferenceSource::kNone) {
      fail(where, "distance stop needs a reference");
    }
    cfg.tasks.push_back(std::move(task));
  }

  cfg.canonical = root.dump();
  cfg.hash = hex64(fnv1a64(cfg.canonical));
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path, const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigInvalid, "cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str(), overrides);
}

std::shared_ptr<Problem> make_problem(const ProblemSpec& spec) {
  if (spec.name == "cartpole") return std::make_shared<CartPoleProblem>(spec.cartpole);
  const BenchmarkKind kind = parse_benchmark_kind(spec.name);
  if (kind == BenchmarkKind::kNarrowValley2D) {
    return std::make_shared<NarrowValley2D>(spec.curvature, spec.start.value_or(Vector()));
  }
  return std::shared_ptr<Problem>(make_benchmark(kind, spec.dim));
}

Vector problem_start(const ProblemSpec& spec, const Problem& problem) {
  if (spec.start) return *spec.start;
  if (const auto* b = dynamic_cast<const StaticBenchmark*>(&problem)) return b->default_start();
  return Vector::Zero(problem.dim());
}

}  // namespace guided_mppi
