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

#ifndef GUIDED_MPPI_PROBLEMS_STATIC_BENCHMARKS_HPP_
#define GUIDED_MPPI_PROBLEMS_STATIC_BENCHMARKS_HPP_

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "guided_mppi/models/problem.hpp"

namespace guided_mppi {

enum class BenchmarkKind {
  kRosenbrock,
  kStyblinskiTang,
  kRastrigin,
  kAckley,
  kSinusoidConvex1D,
  kNarrowValley2D,
};

std::string_view to_string(BenchmarkKind kind);
BenchmarkKind parse_benchmark_kind(std::string_view name);

// Closed-form test function with analytic derivatives and a known minimizer.
class StaticBenchmark : public Problem {
 public:
  explicit StaticBenchmark(Eigen::Index dim) : dim_(dim) {}

  virtual BenchmarkKind kind() const = 0;
  virtual double known_min_value() const = 0;
  // Whether the objective is C^2 everywhere (Ackley is not at the origin).
  virtual bool smooth() const { return true; }
  // Initial mean used by the benchmark experiments.
  virtual Vector default_start() const = 0;

  std::string name() const override { return std::string(to_string(kind())); }
  Eigen::Index dim() const override { return dim_; }
  bool has_gradient() const override { return true; }
  bool has_hessian() const override { return true; }

 protected:
  Eigen::Index dim_;
};

// sum_i 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2, with residual form
// R = sqrt(2) * (1 - x_i, 10 (x_{i+1} - x_i^2))_i.
class Rosenbrock final : public StaticBenchmark {
 public:
  explicit Rosenbrock(Eigen::Index dim = 2);
  BenchmarkKind kind() const override { return BenchmarkKind::kRosenbrock; }
  double eval(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  Matrix hessian(const Vector& x) const override;
  bool has_residual() const override { return true; }
  Vector residual(const Vector& x) const override;
  Matrix jacobian(const Vector& x) const override;
  std::optional<Vector> known_optimum() const override { return Vector::Ones(dim_); }
  double known_min_value() const override { return 0.0; }
  Vector default_start() const override { return Vector::Zero(dim_); }
};

// 1/2 sum_i (x_i^4 - 16 x_i^2 + 5 x_i).
class StyblinskiTang final : public StaticBenchmark {
 public:
  explicit StyblinskiTang(Eigen::Index dim = 2);
  BenchmarkKind kind() const override { return BenchmarkKind::kStyblinskiTang; }
  double eval(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  Matrix hessian(const Vector& x) const override;
  std::optional<Vector> known_optimum() const override;
  double known_min_value() const override;
  Vector default_start() const override { return Vector::Zero(dim_); }

  // Minimizer of the 1-D summand, polished by Newton iterations.
  static double coordinate_minimizer();
};

// 10 d + sum_i (x_i^2 - 10 cos(2 pi x_i)).
class Rastrigin final : public StaticBenchmark {
 public:
  explicit Rastrigin(Eigen::Index dim = 2);
  BenchmarkKind kind() const override { return BenchmarkKind::kRastrigin; }
  double eval(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  Matrix hessian(const Vector& x) const override;
  std::optional<Vector> known_optimum() const override { return Vector::Zero(dim_); }
  double known_min_value() const override { return 0.0; }
  Vector default_start() const override;
};

// -a exp(-b sqrt(mean(x^2))) - exp(mean(cos(c x))) + a + e with a = 20,
// b = 0.2, c = 2 pi. At the origin the radial cone term has no derivative;
// gradient and Hessian there drop it.
class Ackley final : public StaticBenchmark {
 public:
  explicit Ackley(Eigen::Index dim = 2);
  BenchmarkKind kind() const override { return BenchmarkKind::kAckley; }
  double eval(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  Matrix hessian(const Vector& x) const override;
  std::optional<Vector> known_optimum() const override { return Vector::Zero(dim_); }
  double known_min_value() const override { return 0.0; }
  bool smooth() const override { return false; }
  Vector default_start() const override { return Vector::Constant(dim_, 2.0); }

  static constexpr double kA = 20.0;
  static constexpr double kB = 0.2;
};

// a x^2 + b sin(omega x): a convex bowl with sinusoidal ripples.
class SinusoidConvex1D final : public StaticBenchmark {
 public:
  SinusoidConvex1D(double a = 0.5, double b = 1.0, double omega = 8.0);
  BenchmarkKind kind() const override { return BenchmarkKind::kSinusoidConvex1D; }
  double eval(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  Matrix hessian(const Vector& x) const override;
  std::optional<Vector> known_optimum() const override { return Vector::Constant(1, argmin_); }
  double known_min_value() const override;
  Vector default_start() const override { return Vector::Constant(1, 2.0); }

  // Gaussian convolution E[f(x + z)], z ~ N(0, sigma^2):
  // a (x^2 + sigma^2) + b exp(-omega^2 sigma^2 / 2) sin(omega x).
  double smoothed(double x, double sigma) const;

  double a() const { return a_; }
  double b() const { return b_; }
  double omega() const { return omega_; }

 private:
  double a_, b_, omega_;
  double argmin_ = 0.0;
};

// Banana-shaped valley (1 - x)^2 + c (y - x^2)^2, minimum at (1, 1).
// The default start (-1.2, 1.44) lies on the valley floor y = x^2, where the
// Hessian condition number is about 700 for c = 15.
class NarrowValley2D final : public StaticBenchmark {
 public:
  explicit NarrowValley2D(double curvature = 15.0, Vector start = Vector());
  BenchmarkKind kind() const override { return BenchmarkKind::kNarrowValley2D; }
  double eval(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  Matrix hessian(const Vector& x) const override;
  bool has_residual() const override { return true; }
  Vector residual(const Vector& x) const override;
  Matrix jacobian(const Vector& x) const override;
  std::optional<Vector> known_optimum() const override { return Vector::Ones(2); }
  double known_min_value() const override { return 0.0; }
  Vector default_start() const override { return start_; }

  double curvature() const { return c_; }

 private:
  double c_;
  Vector start_;
};

std::unique_ptr<StaticBenchmark> make_benchmark(BenchmarkKind kind, Eigen::Index dim = 2);

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_PROBLEMS_STATIC_BENCHMARKS_HPP_
