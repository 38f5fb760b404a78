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

#include "guided_mppi/optimizers/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "guided_mppi/core/error.hpp"
#include "guided_mppi/core/weighting.hpp"

namespace guided_mppi {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kConfigInvalid, what);
}

Vector evaluate_columns(const Problem& problem, const Matrix& points) {
  Vector out(points.cols());
  for (Eigen::Index i = 0; i < points.cols(); ++i) out[i] = problem.eval(points.col(i));
  return out;
}

// Weights, or nullopt when the whole batch is +inf.
std::optional<WeightVector> try_weights(const Vector& costs, double lambda) {
  try {
    return boltzmann_weights(costs, lambda);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kDegenerateBatch) return std::nullopt;
    throw;
  }
}

// Moves the state to new_mean, paying one evaluation unless it is unchanged.
// A mean whose cost is not finite is rejected; returns false in that case.
bool settle(OptimizerState& state, const Problem& problem, const Vector& new_mean) {
  ++state.iter;
  if (new_mean == state.mean) return true;
  const double cost = problem.eval(new_mean);
  ++state.f_evals;
  if (!std::isfinite(cost)) return false;
  state.mean = new_mean;
  state.cost = cost;
  return true;
}

RunRow row_from(const OptimizerState& state) {
  RunRow row;
  row.iter = state.iter;
  row.mean = state.mean;
  row.cost = state.cost;
  row.f_evals = state.f_evals;
  row.ess = kNaN;
  row.dist_to_ref = kNaN;
  return row;
}

}  // namespace

std::string_view to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::kGuided:
      return "guided";
    case OptimizerKind::kVanilla:
      return "vanilla";
    case OptimizerKind::kCem:
      return "cem_baseline";
  }
  return "unknown";
}

std::string_view to_string(Formulation formulation) {
  return formulation == Formulation::kFullIterate ? "full_iterate" : "incremental";
}

OptimizerKind parse_optimizer_kind(std::string_view name) {
  if (name == "cem") return OptimizerKind::kCem;
  for (OptimizerKind k : {OptimizerKind::kGuided, OptimizerKind::kVanilla, OptimizerKind::kCem}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::kConfigInvalid, "unknown optimizer '" + std::string(name) + "'");
}

Formulation parse_formulation(std::string_view name) {
  for (Formulation f : {Formulation::kFullIterate, Formulation::kIncremental}) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorCode::kConfigInvalid, "unknown formulation '" + std::string(name) + "'");
}

void OptimizerConfig::validate() const {
  require(num_samples >= 1, "num_samples must be >= 1");
  require(max_iters >= 0, "max_iters must be >= 0");
  require(initial_mean.size() > 0, "initial_mean is empty");
  require(initial_mean.allFinite(), "initial_mean must be finite");
  if (prior_cov) {
    require(prior_cov->rows() == initial_mean.size() && prior_cov->cols() == initial_mean.size(),
            "prior_cov shape does not match initial_mean");
  } else {
    require(prior_sigma > 0.0 && std::isfinite(prior_sigma), "prior_sigma must be positive");
  }
  if (reference) require(reference->size() == initial_mean.size(), "reference has wrong size");
  if (stop.distance_tol) require(*stop.distance_tol > 0.0, "distance_tol must be positive");
  if (stop.gradient_tol) require(*stop.gradient_tol > 0.0, "gradient_tol must be positive");
  require(cem.elite_frac > 0.0 && cem.elite_frac <= 1.0, "cem.elite_frac must be in (0, 1]");
  require(cem.alpha >= 0.0 && cem.alpha <= 1.0, "cem.alpha must be in [0, 1]");
  require(cem.jitter >= 0.0, "cem.jitter must be >= 0");
  guidance.validate();
  provider.smoothing.validate();
}

Matrix OptimizerConfig::initial_cov() const {
  if (prior_cov) return *prior_cov;
  const Eigen::Index d = initial_mean.size();
  return prior_sigma * prior_sigma * Matrix::Identity(d, d);
}

OptimizerState initial_state(const Problem& problem, const OptimizerConfig& cfg) {
  if (cfg.initial_mean.size() != problem.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "initial_mean has " + std::to_string(cfg.initial_mean.size()) +
                    " entries, problem dimension is " + std::to_string(problem.dim()));
  }
  OptimizerState state;
  state.mean = cfg.initial_mean;
  state.cost = problem.eval(state.mean);
  state.cov = cfg.initial_cov();
  state.f_evals = 1;
  return state;
}

StepResult guided_mppi_step(const OptimizerState& state, const Problem& problem,
                            const OptimizerConfig& cfg, const Rng& rng) {
  Rng model_rng = rng.child(0);
  Rng sample_rng = rng.child(1);
  const double lambda = cfg.guidance.lambda;

  ModelOutput built =
      build_model(cfg.provider, problem, state.mean, state.cost, state.provider, state.iter, model_rng);
  const GaussianParams prior(state.mean, state.cov);
  const GuidedPrior guided = cfg.formulation == Formulation::kIncremental
                                 ? build_guided_prior(prior, built.model, cfg.guidance, state.ema)
                                 : build_guided_prior_full(prior, built.model, cfg.guidance);

  const GaussianParams sampling(guided.mean, symmetrize(guided.cov));
  const Matrix points = sample_gaussian(sampling, cfg.num_samples, sample_rng);
  const Vector costs = evaluate_columns(problem, points);
  Vector residuals(costs.size());
  for (Eigen::Index i = 0; i < costs.size(); ++i) {
    residuals[i] = costs[i] - built.model(points.col(i));
  }

  StepResult out{state, {}};
  OptimizerState& next = out.state;
  next.provider = built.state;
  if (cfg.formulation == Formulation::kIncremental) next.ema = guided.ema;
  next.f_evals += cfg.num_samples + built.f_evals;

  const std::optional<WeightVector> weights = try_weights(residuals, lambda);
  Vector new_mean = state.mean;
  if (weights) {
    if (cfg.formulation == Formulation::kFullIterate) {
      new_mean = weighted_mean(points, *weights);
    } else {
      const Matrix eps = points.colwise() - state.mean;
      new_mean = state.mean + eps * weights->values();
    }
  }
  const bool accepted = settle(next, problem, new_mean);

  out.row = row_from(next);
  out.row.ess = weights ? effective_sample_size(*weights) : 0.0;
  out.row.degenerate = !weights || !accepted;
  out.row.sigma_used = built.sigma_used;
  out.row.floor_applied = guided.floor_applied;
  out.row.floor_infeasible = guided.floor_infeasible;
  out.row.floor_clamped = guided.floor_clamped;
  return out;
}

StepResult vanilla_mppi_step(const OptimizerState& state, const Problem& problem,
                             const OptimizerConfig& cfg, const Rng& rng) {
  Rng sample_rng = rng.child(1);
  const GaussianParams sampling(state.mean, state.cov);
  const Matrix points = sample_gaussian(sampling, cfg.num_samples, sample_rng);
  const Vector costs = evaluate_columns(problem, points);

  StepResult out{state, {}};
  out.state.f_evals += cfg.num_samples;
  const std::optional<WeightVector> weights = try_weights(costs, cfg.guidance.lambda);
  const bool accepted =
      settle(out.state, problem, weights ? weighted_mean(points, *weights) : state.mean);

  out.row = row_from(out.state);
  out.row.ess = weights ? effective_sample_size(*weights) : 0.0;
  out.row.degenerate = !weights || !accepted;
  return out;
}

StepResult cem_step(const OptimizerState& state, const Problem& problem,
                    const OptimizerConfig& cfg, const Rng& rng) {
  const int n = cfg.num_samples;
  const int elites = static_cast<int>(std::ceil(n * cfg.cem.elite_frac - 1e-12));
  if (elites < 2) {
    throw Error(ErrorCode::kConfigInvalid, "CEM needs at least two elites, got " + std::to_string(elites));
  }
  Rng sample_rng = rng.child(1);
  const GaussianParams sampling(state.mean, state.cov);
  const Matrix points = sample_gaussian(sampling, n, sample_rng);
  const Vector costs = evaluate_columns(problem, points);
  if (costs.hasNaN()) throw Error(ErrorCode::kNaNCost, "CEM batch contains NaN costs");

  StepResult out{state, {}};
  OptimizerState& next = out.state;
  next.f_evals += n;
  const bool degenerate = (costs.array() == std::numeric_limits<double>::infinity()).all();
  Vector new_mean = state.mean;
  if (!degenerate) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return costs[a] < costs[b]; });
    Matrix elite(points.rows(), elites);
    for (int j = 0; j < elites; ++j) elite.col(j) = points.col(order[j]);
    new_mean = elite.rowwise().mean();
    const Matrix centered = elite.colwise() - new_mean;
    const Matrix elite_cov = centered * centered.transpose() / static_cast<double>(elites);
    const Eigen::Index d = state.mean.size();
    next.cov = symmetrize(cfg.cem.alpha * elite_cov + (1.0 - cfg.cem.alpha) * state.cov +
                          cfg.cem.jitter * Matrix::Identity(d, d));
  }
  const bool accepted = settle(next, problem, new_mean);

  out.row = row_from(next);
  out.row.ess = degenerate ? 0.0 : static_cast<double>(elites);
  out.row.degenerate = degenerate || !accepted;
  return out;
}

RunRecord run(const Problem& problem, OptimizerKind kind, const OptimizerConfig& cfg) {
  cfg.validate();
  std::optional<Vector> reference = cfg.reference ? cfg.reference : problem.known_optimum();
  if (reference && reference->size() != problem.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "reference dimension does not match problem");
  }
  if (cfg.stop.distance_tol && !reference) {
    throw Error(ErrorCode::kConfigInvalid, "distance stop criterion needs a reference point");
  }

  RunRecord record;
  auto finish_row = [&](RunRow row) {
    if (reference) row.dist_to_ref = (row.mean - *reference).lpNorm<Eigen::Infinity>();
    bool done = false;
    if (cfg.stop.distance_tol && row.dist_to_ref < *cfg.stop.distance_tol) done = true;
    if (cfg.stop.gradient_tol &&
        problem.gradient(row.mean).lpNorm<Eigen::Infinity>() < *cfg.stop.gradient_tol) {
      done = true;
    }
    record.rows.push_back(std::move(row));
    if (done) {
      record.converged = true;
      record.converged_iter = record.rows.back().iter;
    }
    return done;
  };

  OptimizerState state = initial_state(problem, cfg);
  if (finish_row(row_from(state))) return record;
  for (int k = 1; k <= cfg.max_iters; ++k) {
    const Rng iteration_rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    StepResult step;
    switch (kind) {
      case OptimizerKind::kGuided:
        step = guided_mppi_step(state, problem, cfg, iteration_rng);
        break;
      case OptimizerKind::kVanilla:
        step = vanilla_mppi_step(state, problem, cfg, iteration_rng);
        break;
      case OptimizerKind::kCem:
        step = cem_step(state, problem, cfg, iteration_rng);
        break;
    }
    state = std::move(step.state);
    if (finish_row(std::move(step.row))) break;
  }
  return record;
}

}  // namespace guided_mppi
