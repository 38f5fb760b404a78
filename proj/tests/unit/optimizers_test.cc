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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "guided_mppi/core/error.hpp"
#include "guided_mppi/core/weighting.hpp"
#include "guided_mppi/optimizers/newton.hpp"
#include "guided_mppi/optimizers/optimizer.hpp"
#include "guided_mppi/problems/static_benchmarks.hpp"
#include "test_problems.hpp"

namespace guided_mppi {
namespace {

using testing::FunctionProblem;
using testing::QuadraticProblem;
using testing::random_spd;
using testing::random_vector;
using testing::vec;

constexpr double kInf = std::numeric_limits<double>::infinity();

OptimizerConfig base_config(const Vector& x0, int n = 16, int iters = 5) {
  OptimizerConfig c;
  c.initial_mean = x0;
  c.num_samples = n;
  c.max_iters = iters;
  return c;
}

bool same_bits(const RunRecord& a, const RunRecord& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const RunRow& x = a.rows[i];
    const RunRow& y = b.rows[i];
    if (x.mean.size() != y.mean.size()) return false;
    if (std::memcmp(x.mean.data(), y.mean.data(), sizeof(double) * x.mean.size()) != 0) return false;
    if (std::memcmp(&x.cost, &y.cost, sizeof(double)) != 0) return false;
    if (std::memcmp(&x.ess, &y.ess, sizeof(double)) != 0) return false;
    if (x.f_evals != y.f_evals || x.iter != y.iter) return false;
  }
  return true;
}

// Zero gradient and Hessian everywhere, so the guided prior is the plain prior.
class FlatModelProblem final : public Problem {
 public:
  explicit FlatModelProblem(std::shared_ptr<const Problem> inner) : inner_(std::move(inner)) {}
  std::string name() const override { return "flat_model"; }
  Eigen::Index dim() const override { return inner_->dim(); }
  double eval(const Vector& x) const override { return inner_->eval(x); }
  bool has_gradient() const override { return true; }
  bool has_hessian() const override { return true; }
  Vector gradient(const Vector&) const override { return Vector::Zero(dim()); }
  Matrix hessian(const Vector&) const override { return Matrix::Zero(dim(), dim()); }

 private:
  std::shared_ptr<const Problem> inner_;
};

TEST(OptimizerConfig, Validation) {
  OptimizerConfig c = base_config(Vector::Zero(2));
  EXPECT_NO_THROW(c.validate());
  c.num_samples = 0;
  EXPECT_THROW(c.validate(), Error);
  c = base_config(Vector::Zero(2));
  c.max_iters = -1;
  EXPECT_THROW(c.validate(), Error);
  c = base_config(Vector());
  EXPECT_THROW(c.validate(), Error);
  c = base_config(Vector::Zero(2));
  c.prior_sigma = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c = base_config(Vector::Zero(2));
  c.cem.elite_frac = 0.0;
  EXPECT_THROW(c.validate(), Error);
  EXPECT_EQ(parse_optimizer_kind("cem"), OptimizerKind::kCem);
  EXPECT_EQ(parse_optimizer_kind("cem_baseline"), OptimizerKind::kCem);
  EXPECT_EQ(to_string(OptimizerKind::kCem), "cem_baseline");
  EXPECT_THROW(parse_optimizer_kind("cma_es"), Error);
}

TEST(Run, MaxItersZeroGivesInitialRowOnly) {
  const Rosenbrock p(2);
  OptimizerConfig c = base_config(Vector::Zero(2), 10, 0);
  const RunRecord r = run(p, OptimizerKind::kGuided, c);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].iter, 0);
  EXPECT_EQ(r.rows[0].f_evals, 1);
  EXPECT_DOUBLE_EQ(r.rows[0].cost, 1.0);
  EXPECT_DOUBLE_EQ(r.rows[0].dist_to_ref, 1.0);
  EXPECT_TRUE(std::isnan(r.rows[0].ess));
}

TEST(Run, SameSeedBitwiseIdentical) {
  const StyblinskiTang p(2);
  for (OptimizerKind k : {OptimizerKind::kGuided, OptimizerKind::kVanilla, OptimizerKind::kCem}) {
    OptimizerConfig c = base_config(Vector::Zero(2), 20, 8);
    c.seed = 17;
    EXPECT_TRUE(same_bits(run(p, k, c), run(p, k, c))) << to_string(k);
    OptimizerConfig other = c;
    other.seed = 18;
    EXPECT_FALSE(same_bits(run(p, k, c), run(p, k, other))) << to_string(k);
  }
}

TEST(Run, IterationsAndEvaluationsMonotone) {
  const Rosenbrock p(2);
  const RunRecord r = run(p, OptimizerKind::kGuided, base_config(Vector::Zero(2), 10, 20));
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    EXPECT_EQ(r.rows[i].iter, r.rows[i - 1].iter + 1);
    EXPECT_GE(r.rows[i].f_evals, r.rows[i - 1].f_evals);
  }
}

TEST(Run, DistanceStopRequiresReference) {
  const FunctionProblem p(1, [](const Vector& x) { return x.squaredNorm(); });
  OptimizerConfig c = base_config(vec({1.0}));
  c.stop.distance_tol = 0.1;
  EXPECT_THROW(run(p, OptimizerKind::kVanilla, c), Error);
  c.reference = vec({0.0});
  EXPECT_NO_THROW(run(p, OptimizerKind::kVanilla, c));
}

TEST(Run, StopsAtThreshold) {
  const Rosenbrock p(2);
  OptimizerConfig c = base_config(Vector::Zero(2), 100, 100);
  c.guidance.lambda = 0.01;
  c.stop.distance_tol = 0.05;
  const RunRecord r = run(p, OptimizerKind::kGuided, c);
  ASSERT_TRUE(r.converged);
  EXPECT_EQ(*r.converged_iter, r.rows.back().iter);
  EXPECT_LT(r.rows.back().dist_to_ref, 0.05);
  for (std::size_t i = 0; i + 1 < r.rows.size(); ++i) EXPECT_GE(r.rows[i].dist_to_ref, 0.05);
}

TEST(FunctionEvaluations, MatchInstrumentedCounter) {
  auto inner = std::make_shared<Rastrigin>(2);
  struct Case {
    OptimizerKind kind;
    ProviderKind provider;
    long per_iter_extra;
  };
  for (const Case& cs : {Case{OptimizerKind::kGuided, ProviderKind::kExact, 0},
                         Case{OptimizerKind::kGuided, ProviderKind::kRandomizedSmoothing, 12},
                         Case{OptimizerKind::kVanilla, ProviderKind::kExact, 0},
                         Case{OptimizerKind::kCem, ProviderKind::kExact, 0}}) {
    CountingProblem p(inner);
    OptimizerConfig c = base_config(vec({1.9, 1.7}), 25, 6);
    c.provider.kind = cs.provider;
    c.provider.smoothing.num_samples = 12;
    c.provider.smoothing.sigma = 0.5;
    c.prior_sigma = 0.5;
    c.cem.elite_frac = 0.2;
    const RunRecord r = run(p, cs.kind, c);
    EXPECT_EQ(r.rows.back().f_evals, p.evaluations());
    // N samples + provider extra + one evaluation of the new mean.
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
      const long step = r.rows[i].f_evals - r.rows[i - 1].f_evals;
      const bool moved = r.rows[i].mean != r.rows[i - 1].mean;
      EXPECT_EQ(step, 25 + cs.per_iter_extra + (moved ? 1 : 0));
    }
  }
}

TEST(GuidedStep, OneStepOnQuadraticNearMinimizer) {
  // Exact model, zero residual: the update is the guided mean plus the
  // average of N draws from a covariance of order lambda H^-1, so the error
  // is the damping bias plus sampling noise of order sqrt(lambda / (N kappa_min)).
  const Matrix a = random_spd(3, 11, 1.0);
  const auto p = QuadraticProblem::centered(a, vec({1.0, -2.0, 0.5}));
  const Vector xstar = *p.known_optimum();
  const double kappa_min = Eigen::SelfAdjointEigenSolver<Matrix>(a).eigenvalues().minCoeff();
  for (double lambda : {1e-3, 1e-6, 1e-10}) {
    for (int n : {1, 2, 10, 100}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        OptimizerConfig c = base_config(vec({4.0, 3.0, -2.0}), n, 1);
        c.guidance.lambda = lambda;
        c.prior_sigma = 1.0;
        c.seed = seed;
        const RunRecord r = run(p, OptimizerKind::kGuided, c);
        const double newton_len = (c.initial_mean - xstar).norm();
        const double bound = 6.0 * std::sqrt(lambda / (n * kappa_min)) + 2.0 * lambda / kappa_min * newton_len;
        EXPECT_LT((r.rows.back().mean - xstar).norm(), bound) << lambda << " " << n;
        EXPECT_NEAR(r.rows.back().ess, n, 1e-6 * n);  // residuals are all zero
      }
    }
  }
}

TEST(GuidedStep, SingleSampleConvergesOnQuadratic1D) {
  const auto p = QuadraticProblem::centered(Matrix::Constant(1, 1, 2.0), vec({3.0}));
  OptimizerConfig c = base_config(vec({-1.0}), 1, 5);
  c.guidance.lambda = 1e-8;
  c.prior_sigma = 1.0;
  const RunRecord r = run(p, OptimizerKind::kGuided, c);
  EXPECT_LT(std::abs(r.rows.back().mean[0] - 3.0), 1e-3);
  EXPECT_EQ(r.rows[1].ess, 1.0);
}

TEST(GuidedStep, FlatModelMatchesVanilla) {
  auto inner = std::make_shared<Ackley>(2);
  const FlatModelProblem flat(inner);
  OptimizerConfig c = base_config(vec({2.0, 2.0}), 30, 5);
  c.guidance.lambda = 0.5;
  c.prior_sigma = 0.4;
  c.guidance.hess_floor = 1e-300;  // the convexified zero Hessian must stay negligible
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    c.seed = seed;
    const RunRecord g = run(flat, OptimizerKind::kGuided, c);
    const RunRecord v = run(*inner, OptimizerKind::kVanilla, c);
    ASSERT_EQ(g.rows.size(), v.rows.size());
    for (std::size_t i = 0; i < g.rows.size(); ++i) {
      EXPECT_LT((g.rows[i].mean - v.rows[i].mean).norm(), 1e-12);
      if (i > 0) EXPECT_NEAR(g.rows[i].ess, v.rows[i].ess, 1e-9 * v.rows[i].ess);
    }
  }
}

TEST(GuidedStep, FullIterateAndIncrementalAgreeWithoutEma) {
  const Rosenbrock p(2);
  OptimizerConfig c = base_config(vec({-0.5, 0.3}), 40, 1);
  c.guidance.lambda = 0.05;
  c.formulation = Formulation::kIncremental;
  const RunRecord inc = run(p, OptimizerKind::kGuided, c);
  c.formulation = Formulation::kFullIterate;
  const RunRecord full = run(p, OptimizerKind::kGuided, c);
  EXPECT_LT((inc.rows[1].mean - full.rows[1].mean).norm(), 1e-10);
}

TEST(GuidedStep, DegenerateBatchKeepsMean) {
  const Vector x0 = vec({0.25, -0.5});
  const FunctionProblem p(2, [x0](const Vector& x) { return x == x0 ? 0.0 : kInf; });
  OptimizerConfig c = base_config(x0, 8, 3);
  for (OptimizerKind k : {OptimizerKind::kVanilla, OptimizerKind::kCem}) {
    c.cem.elite_frac = 0.25;
    const RunRecord r = run(p, k, c);
    ASSERT_EQ(r.rows.size(), 4u);
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
      EXPECT_TRUE(r.rows[i].degenerate) << to_string(k);
      EXPECT_EQ(r.rows[i].mean, x0);
    }
  }
}

TEST(GuidedStep, SmoothingWithInfiniteCostsFails) {
  const Vector x0 = vec({0.25, -0.5});
  const FunctionProblem p(2, [x0](const Vector& x) { return x == x0 ? 0.0 : kInf; });
  OptimizerConfig c = base_config(x0, 8, 3);
  c.provider.kind = ProviderKind::kRandomizedSmoothing;
  c.provider.smoothing.num_samples = 4;
  EXPECT_THROW(run(p, OptimizerKind::kGuided, c), Error);
}

TEST(GuidedStep, NonFiniteMeanRejected) {
  // Finite on the samples but infinite near their average.
  const FunctionProblem p(1, [](const Vector& x) {
    if (x[0] == 0.0) return 0.0;
    return std::abs(x[0]) < 0.3 ? kInf : 1.0;
  });
  OptimizerConfig c = base_config(vec({0.0}), 100, 10);
  c.prior_sigma = 1.0;
  const RunRecord r = run(p, OptimizerKind::kVanilla, c);
  int rejected = 0;
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    EXPECT_TRUE(std::isfinite(r.rows[i].cost));
    if (r.rows[i].degenerate) {
      ++rejected;
      EXPECT_EQ(r.rows[i].mean, r.rows[i - 1].mean);
    }
  }
  EXPECT_GE(rejected, 8);
}

TEST(VanillaStep, ConstantObjectiveRandomWalk) {
  const FunctionProblem p(1, [](const Vector&) { return 1.0; });
  OptimizerConfig c = base_config(vec({0.0}), 4, 1);
  c.prior_sigma = 1.0;
  const int reps = 10000;
  double sum = 0.0, sq = 0.0;
  for (int s = 0; s < reps; ++s) {
    c.seed = static_cast<std::uint64_t>(s);
    const double d = run(p, OptimizerKind::kVanilla, c).rows[1].mean[0];
    sum += d;
    sq += d * d;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sq / reps - mean * mean) / reps);
  EXPECT_LT(std::abs(mean), 4.0 * se);
}

TEST(VanillaStep, LinearObjectiveMovesDownhill) {
  const Vector a = vec({1.0, 2.0});
  const QuadraticProblem p(Matrix::Zero(2, 2), a);
  OptimizerConfig c = base_config(Vector::Zero(2), 20, 1);
  c.guidance.lambda = 0.01;
  int downhill = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    c.seed = s;
    downhill += a.dot(run(p, OptimizerKind::kVanilla, c).rows[1].mean) < 0.0 ? 1 : 0;
  }
  EXPECT_GE(downhill, 48);
}

TEST(VanillaStep, CovarianceFixed) {
  const Rosenbrock p(2);
  OptimizerConfig c = base_config(Vector::Zero(2), 10, 1);
  OptimizerState s = initial_state(p, c);
  const StepResult r = vanilla_mppi_step(s, p, c, Rng(3));
  EXPECT_EQ(r.state.cov, s.cov);
}

TEST(CemStep, TiesUseStableIndexOrder) {
  const FunctionProblem p(2, [](const Vector&) { return 0.0; });
  OptimizerConfig c = base_config(Vector::Zero(2), 10, 1);
  c.cem.elite_frac = 0.3;
  const OptimizerState s = initial_state(p, c);
  const Rng rng(5);
  const StepResult r = cem_step(s, p, c, rng);
  Rng sampler = rng.child(1);
  const Matrix pts = sample_gaussian(GaussianParams(s.mean, s.cov), 10, sampler);
  EXPECT_LT((r.state.mean - pts.leftCols(3).rowwise().mean()).norm(), 1e-15);
}

TEST(CemStep, FullEliteFractionIsSampleMoments) {
  const Rosenbrock p(2);
  OptimizerConfig c = base_config(vec({0.3, 0.3}), 12, 1);
  c.cem.elite_frac = 1.0;
  c.cem.jitter = 0.0;
  c.cem.alpha = 1.0;
  const OptimizerState s = initial_state(p, c);
  const Rng rng(8);
  const StepResult r = cem_step(s, p, c, rng);
  Rng sampler = rng.child(1);
  const Matrix pts = sample_gaussian(GaussianParams(s.mean, s.cov), 12, sampler);
  const Vector m = pts.rowwise().mean();
  const Matrix centered = pts.colwise() - m;
  EXPECT_LT((r.state.mean - m).norm(), 1e-14);
  EXPECT_LT((r.state.cov - centered * centered.transpose() / 12.0).norm(), 1e-14);
}

TEST(CemStep, ConvergesOnParabola) {
  const FunctionProblem p(1, [](const Vector& x) { return x[0] * x[0]; });
  OptimizerConfig c = base_config(vec({5.0}), 20, 20);
  c.prior_sigma = 1.0;
  c.cem.elite_frac = 0.2;
  c.cem.alpha = 0.5;  // alpha = 1 collapses the covariance before reaching 0
  std::vector<double> finals;
  for (std::uint64_t s = 0; s < 20; ++s) {
    c.seed = s;
    finals.push_back(std::abs(run(p, OptimizerKind::kCem, c).rows.back().mean[0]));
  }
  std::nth_element(finals.begin(), finals.begin() + 10, finals.end());
  EXPECT_LT(finals[10], 0.5);
}

TEST(CemStep, RequiresTwoElites) {
  const Rosenbrock p(2);
  OptimizerConfig c = base_config(Vector::Zero(2), 10, 1);
  c.cem.elite_frac = 0.1;
  EXPECT_THROW(run(p, OptimizerKind::kCem, c), Error);
}

TEST(Newton, QuadraticOneStep) {
  const auto p = QuadraticProblem::centered(random_spd(4, 3, 1.0), random_vector(4, 4));
  const NewtonResult r = newton_reference(p, Vector::Zero(4), 1e-10, 50);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 1);
  EXPECT_LT((r.x - *p.known_optimum()).norm(), 1e-10);
}

TEST(Newton, RosenbrockFromOrigin) {
  const Rosenbrock p(2);
  const NewtonResult r = newton_reference(p, Vector::Zero(2), 1e-10, 50);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 50);
  EXPECT_LT((r.x - Vector::Ones(2)).lpNorm<Eigen::Infinity>(), 1e-10);
  EXPECT_LT(p.eval(r.x), 1e-18);
}

TEST(Newton, FiniteDifferenceHessianFallback) {
  class GradOnly final : public Problem {
   public:
    std::string name() const override { return "grad_only"; }
    Eigen::Index dim() const override { return 2; }
    double eval(const Vector& x) const override { return inner.eval(x); }
    bool has_gradient() const override { return true; }
    Vector gradient(const Vector& x) const override { return inner.gradient(x); }
    Rosenbrock inner{2};
  } p;
  const NewtonResult r = newton_reference(p, Vector::Zero(2), 1e-8, 100);
  EXPECT_TRUE(r.converged);
  EXPECT_LT((r.x - Vector::Ones(2)).lpNorm<Eigen::Infinity>(), 1e-6);
}

TEST(Newton, NeedsGradient) {
  const FunctionProblem p(1, [](const Vector& x) { return x.squaredNorm(); });
  try {
    newton_reference(p, Vector::Zero(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapabilityMissing);
  }
}

TEST(Newton, ReportsNonConvergence) {
  const Rosenbrock p(2);
  const NewtonResult r = newton_reference(p, vec({-1.2, 1.0}), 1e-12, 2);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 2);
}

}  // namespace
}  // namespace guided_mppi
