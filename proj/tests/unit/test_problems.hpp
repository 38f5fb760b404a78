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

#ifndef GUIDED_MPPI_TESTS_TEST_PROBLEMS_HPP_
#define GUIDED_MPPI_TESTS_TEST_PROBLEMS_HPP_

#include <functional>
#include <random>
#include <string>

#include <Eigen/Cholesky>

#include "guided_mppi/models/problem.hpp"

namespace guided_mppi::testing {

// f(x) = 1/2 (x - c)^T A (x - c) + b^T x + k, with residual L^T (x - c)
// when A = L L^T and b = 0, k = 0.
class QuadraticProblem final : public Problem {
 public:
  QuadraticProblem(Matrix a, Vector b, double k = 0.0, Vector c = Vector())
      : a_(std::move(a)), b_(std::move(b)), k_(k), c_(c.size() ? std::move(c) : Vector::Zero(b_.size())) {}
  static QuadraticProblem centered(Matrix a, Vector c) {
    const Eigen::Index d = c.size();
    return QuadraticProblem(std::move(a), Vector::Zero(d), 0.0, std::move(c));
  }

  std::string name() const override { return "quadratic"; }
  Eigen::Index dim() const override { return b_.size(); }
  double eval(const Vector& x) const override {
    const Vector e = x - c_;
    return 0.5 * e.dot(a_ * e) + b_.dot(x) + k_;
  }
  bool has_gradient() const override { return true; }
  bool has_hessian() const override { return true; }
  bool has_residual() const override { return b_.isZero(0.0) && k_ == 0.0; }
  Vector gradient(const Vector& x) const override { return a_ * (x - c_) + b_; }
  Matrix hessian(const Vector&) const override { return a_; }
  Vector residual(const Vector& x) const override { return jacobian(x) * (x - c_); }
  Matrix jacobian(const Vector&) const override {
    return Eigen::LLT<Matrix>(a_).matrixL().transpose();
  }
  std::optional<Vector> known_optimum() const override {
    return Eigen::LLT<Matrix>(a_).solve(a_ * c_ - b_);
  }

 private:
  Matrix a_;
  Vector b_;
  double k_;
  Vector c_;
};

// Residual R(x) = A x - b.
class LinearResidualProblem final : public Problem {
 public:
  LinearResidualProblem(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {}
  std::string name() const override { return "linear_residual"; }
  Eigen::Index dim() const override { return a_.cols(); }
  double eval(const Vector& x) const override { return 0.5 * (a_ * x - b_).squaredNorm(); }
  bool has_gradient() const override { return true; }
  bool has_hessian() const override { return true; }
  bool has_residual() const override { return true; }
  Vector gradient(const Vector& x) const override { return a_.transpose() * (a_ * x - b_); }
  Matrix hessian(const Vector&) const override { return a_.transpose() * a_; }
  Vector residual(const Vector& x) const override { return a_ * x - b_; }
  Matrix jacobian(const Vector&) const override { return a_; }

 private:
  Matrix a_;
  Vector b_;
};

// Objective-only problem; eval counts are not tracked here (see CountingProblem).
class FunctionProblem final : public Problem {
 public:
  FunctionProblem(Eigen::Index d, std::function<double(const Vector&)> f) : d_(d), f_(std::move(f)) {}
  std::string name() const override { return "function"; }
  Eigen::Index dim() const override { return d_; }
  double eval(const Vector& x) const override { return f_(x); }

 private:
  Eigen::Index d_;
  std::function<double(const Vector&)> f_;
};

inline Matrix random_spd(Eigen::Index d, std::uint64_t seed, double shift = 0.5) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = n(gen);
  Matrix a = m * m.transpose() / static_cast<double>(d);
  a.diagonal().array() += shift;
  return a;
}

inline Vector random_vector(Eigen::Index d, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n(0.0, scale);
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = n(gen);
  return v;
}

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace guided_mppi::testing

#endif  // GUIDED_MPPI_TESTS_TEST_PROBLEMS_HPP_
