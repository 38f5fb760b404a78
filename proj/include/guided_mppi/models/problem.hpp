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

#ifndef GUIDED_MPPI_MODELS_PROBLEM_HPP_
#define GUIDED_MPPI_MODELS_PROBLEM_HPP_

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "guided_mppi/core/types.hpp"

namespace guided_mppi {

// Objective f: R^d -> R with optional derivative capabilities. When a
// residual is provided, eval(x) == 0.5 * ||residual(x)||^2.
//
// Implementations must be pure and reentrant.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  virtual Eigen::Index dim() const = 0;
  virtual double eval(const Vector& x) const = 0;

  virtual bool has_gradient() const { return false; }
  virtual bool has_hessian() const { return false; }
  virtual bool has_residual() const { return false; }

  // The defaults throw kCapabilityMissing.
  virtual Vector gradient(const Vector& x) const;
  virtual Matrix hessian(const Vector& x) const;
  virtual Vector residual(const Vector& x) const;
  virtual Matrix jacobian(const Vector& x) const;

  // Known minimizer, when one exists (benchmarks) or has been computed.
  virtual std::optional<Vector> known_optimum() const { return std::nullopt; }

 protected:
  void check_dim(const Vector& x) const;
};

// Forwards to another problem and counts objective evaluations.
class CountingProblem final : public Problem {
 public:
  explicit CountingProblem(std::shared_ptr<const Problem> inner) : inner_(std::move(inner)) {}

  std::string name() const override { return inner_->name(); }
  Eigen::Index dim() const override { return inner_->dim(); }
  double eval(const Vector& x) const override {
    evals_.fetch_add(1, std::memory_order_relaxed);
    return inner_->eval(x);
  }
  bool has_gradient() const override { return inner_->has_gradient(); }
  bool has_hessian() const override { return inner_->has_hessian(); }
  bool has_residual() const override { return inner_->has_residual(); }
  Vector gradient(const Vector& x) const override { return inner_->gradient(x); }
  Matrix hessian(const Vector& x) const override { return inner_->hessian(x); }
  Vector residual(const Vector& x) const override { return inner_->residual(x); }
  Matrix jacobian(const Vector& x) const override { return inner_->jacobian(x); }
  std::optional<Vector> known_optimum() const override { return inner_->known_optimum(); }

  std::int64_t evaluations() const { return evals_.load(); }

 private:
  std::shared_ptr<const Problem> inner_;
  mutable std::atomic<std::int64_t> evals_{0};
};

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_MODELS_PROBLEM_HPP_
