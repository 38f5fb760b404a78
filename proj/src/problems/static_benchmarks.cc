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

#include "guided_mppi/problems/static_benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "guided_mppi/core/error.hpp"

namespace guided_mppi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
const double kSqrt2 = std::sqrt(2.0);

void require_dim(Eigen::Index dim, Eigen::Index min_dim, const char* what) {
  if (dim < min_dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " needs dimension >= " + std::to_string(min_dim));
  }
}

}  // namespace

std::string_view to_string(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::kRosenbrock: return "rosenbrock";
    case BenchmarkKind::kStyblinskiTang: return "styblinski_tang";
    case BenchmarkKind::kRastrigin: return "rastrigin";
    case BenchmarkKind::kAckley: return "ackley";
    case BenchmarkKind::kSinusoidConvex1D: return "sinusoid_convex_1d";
    case BenchmarkKind::kNarrowValley2D: return "narrow_valley_2d";
  }
  return "unknown";
}

BenchmarkKind parse_benchmark_kind(std::string_view name) {
  for (BenchmarkKind k : {BenchmarkKind::kRosenbrock, BenchmarkKind::kStyblinskiTang,
                          BenchmarkKind::kRastrigin, BenchmarkKind::kAckley,
                          BenchmarkKind::kSinusoidConvex1D, BenchmarkKind::kNarrowValley2D}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::kConfigInvalid, "unknown benchmark '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- Rosenbrock

Rosenbrock::Rosenbrock(Eigen::Index dim) : StaticBenchmark(dim) {
  require_dim(dim, 2, "Rosenbrock");
}

double Rosenbrock::eval(const Vector& x) const {
  check_dim(x);
  double f = 0.0;
  for (Eigen::Index i = 0; i + 1 < dim_; ++i) {
    const double a = 1.0 - x[i];
    const double b = x[i + 1] - x[i] * x[i];
    f += a * a + 100.0 * b * b;
  }
  return f;
}

Vector Rosenbrock::gradient(const Vector& x) const {
  check_dim(x);
  Vector g = Vector::Zero(dim_);
  for (Eigen::Index i = 0; i + 1 < dim_; ++i) {
    const double b = x[i + 1] - x[i] * x[i];
    g[i] += -2.0 * (1.0 - x[i]) - 400.0 * x[i] * b;
    g[i + 1] += 200.0 * b;
  }
  return g;
}

Matrix Rosenbrock::hessian(const Vector& x) const {
  check_dim(x);
  Matrix h = Matrix::Zero(dim_, dim_);
  for (Eigen::Index i = 0; i + 1 < dim_; ++i) {
    h(i, i) += 1200.0 * x[i] * x[i] - 400.0 * x[i + 1] + 2.0;
    h(i, i + 1) += -400.0 * x[i];
    h(i + 1, i) += -400.0 * x[i];
    h(i + 1, i + 1) += 200.0;
  }
  return h;
}

Vector Rosenbrock::residual(const Vector& x) const {
  check_dim(x);
  Vector r(2 * (dim_ - 1));
  for (Eigen::Index i = 0; i + 1 < dim_; ++i) {
    r[2 * i] = kSqrt2 * (1.0 - x[i]);
    r[2 * i + 1] = kSqrt2 * 10.0 * (x[i + 1] - x[i] * x[i]);
  }
  return r;
}

Matrix Rosenbrock::jacobian(const Vector& x) const {
  check_dim(x);
  Matrix j = Matrix::Zero(2 * (dim_ - 1), dim_);
  for (Eigen::Index i = 0; i + 1 < dim_; ++i) {
    j(2 * i, i) = -kSqrt2;
    j(2 * i + 1, i) = -kSqrt2 * 20.0 * x[i];
    j(2 * i + 1, i + 1) = kSqrt2 * 10.0;
  }
  return j;
}

// ----------------------------------------------------------- Styblinski-Tang

StyblinskiTang::StyblinskiTang(Eigen::Index dim) : StaticBenchmark(dim) {
  require_dim(dim, 1, "Styblinski-Tang");
}

double StyblinskiTang::eval(const Vector& x) const {
  check_dim(x);
  double f = 0.0;
  for (Eigen::Index i = 0; i < dim_; ++i) {
    const double x2 = x[i] * x[i];
    f += x2 * x2 - 16.0 * x2 + 5.0 * x[i];
  }
  return 0.5 * f;
}

Vector StyblinskiTang::gradient(const Vector& x) const {
  check_dim(x);
  return (2.0 * x.array().cube() - 16.0 * x.array() + 2.5).matrix();
}

Matrix StyblinskiTang::hessian(const Vector& x) const {
  check_dim(x);
  return (6.0 * x.array().square() - 16.0).matrix().asDiagonal();
}

double StyblinskiTang::coordinate_minimizer() {
  double t = -2.9;
  for (int k = 0; k < 50; ++k) {
    const double g = 2.0 * t * t * t - 16.0 * t + 2.5;
    const double h = 6.0 * t * t - 16.0;
    const double step = g / h;
    t -= step;
    if (std::abs(step) < 1e-16) break;
  }
  return t;
}

std::optional<Vector> StyblinskiTang::known_optimum() const {
  return Vector::Constant(dim_, coordinate_minimizer());
}

double StyblinskiTang::known_min_value() const { return eval(*known_optimum()); }

// ----------------------------------------------------------------- Rastrigin

Rastrigin::Rastrigin(Eigen::Index dim) : StaticBenchmark(dim) {
  require_dim(dim, 1, "Rastrigin");
}

double Rastrigin::eval(const Vector& x) const {
  check_dim(x);
  double f = 10.0 * static_cast<double>(dim_);
  for (Eigen::Index i = 0; i < dim_; ++i) {
    f += x[i] * x[i] - 10.0 * std::cos(2.0 * kPi * x[i]);
  }
  return f;
}

Vector Rastrigin::gradient(const Vector& x) const {
  check_dim(x);
  Vector g(dim_);
  for (Eigen::Index i = 0; i < dim_; ++i) {
    g[i] = 2.0 * x[i] + 20.0 * kPi * std::sin(2.0 * kPi * x[i]);
  }
  return g;
}

Matrix Rastrigin::hessian(const Vector& x) const {
  check_dim(x);
  Vector diag(dim_);
  for (Eigen::Index i = 0; i < dim_; ++i) {
    diag[i] = 2.0 + 40.0 * kPi * kPi * std::cos(2.0 * kPi * x[i]);
  }
  return diag.asDiagonal();
}

Vector Rastrigin::default_start() const {
  Vector x = Vector::Constant(dim_, 1.9);
  if (dim_ >= 2) x[1] = 1.7;
  return x;
}

// -------------------------------------------------------------------- Ackley

Ackley::Ackley(Eigen::Index dim) : StaticBenchmark(dim) { require_dim(dim, 1, "Ackley"); }

double Ackley::eval(const Vector& x) const {
  check_dim(x);
  const double n = static_cast<double>(dim_);
  const double r = std::sqrt(x.squaredNorm() / n);
  double cos_mean = 0.0;
  for (Eigen::Index i = 0; i < dim_; ++i) cos_mean += std::cos(2.0 * kPi * x[i]);
  cos_mean /= n;
  // Grouped so that both brackets vanish exactly at the origin.
  return kA * (1.0 - std::exp(-kB * r)) + (kE - std::exp(cos_mean));
}

Vector Ackley::gradient(const Vector& x) const {
  check_dim(x);
  const double n = static_cast<double>(dim_);
  const double r = std::sqrt(x.squaredNorm() / n);
  double cos_mean = 0.0;
  for (Eigen::Index i = 0; i < dim_; ++i) cos_mean += std::cos(2.0 * kPi * x[i]);
  cos_mean /= n;
  const double e_cos = std::exp(cos_mean);
  Vector g(dim_);
  for (Eigen::Index i = 0; i < dim_; ++i) {
    const double radial = r > 0.0 ? kA * kB * std::exp(-kB * r) * x[i] / (n * r) : 0.0;
    g[i] = radial + e_cos * 2.0 * kPi * std::sin(2.0 * kPi * x[i]) / n;
  }
  return g;
}

Matrix Ackley::hessian(const Vector& x) const {
  check_dim(x);
  const double n = static_cast<double>(dim_);
  const double c = 2.0 * kPi;
  const double r = std::sqrt(x.squaredNorm() / n);
  Matrix h = Matrix::Zero(dim_, dim_);
  if (r > 0.0) {
    // phi(r) = -a exp(-b r); H = phi'' grad_r grad_r^T + phi' hess_r.
    const double d1 = kA * kB * std::exp(-kB * r);
    const double d2 = -kA * kB * kB * std::exp(-kB * r);
    const Vector grad_r = x / (n * r);
    Matrix hess_r = Matrix::Identity(dim_, dim_) / (n * r);
    hess_r -= (x * x.transpose()) / (n * n * r * r * r);
    h += d2 * grad_r * grad_r.transpose() + d1 * hess_r;
  }
  // psi = -exp(S), S = mean(cos(c x)).
  double s = 0.0;
  for (Eigen::Index i = 0; i < dim_; ++i) s += std::cos(c * x[i]);
  s /= n;
  const double es = std::exp(s);
  Vector grad_s(dim_);
  Vector hess_s_diag(dim_);
  for (Eigen::Index i = 0; i < dim_; ++i) {
    grad_s[i] = -c * std::sin(c * x[i]) / n;
    hess_s_diag[i] = -c * c * std::cos(c * x[i]) / n;
  }
  h -= es * (grad_s * grad_s.transpose());
  h.diagonal() -= es * hess_s_diag;
  return h;
}

// --------------------------------------------------------- SinusoidConvex1D

SinusoidConvex1D::SinusoidConvex1D(double a, double b, double omega)
    : StaticBenchmark(1), a_(a), b_(b), omega_(omega) {
  if (!(a > 0.0)) throw Error(ErrorCode::kConfigInvalid, "sinusoid bowl needs a > 0");
  // Dense scan of the bowl (the minimizer lies within |x| <= |b| omega / (2a)
  // + 1) followed by Newton polishing.
  const double half_width = std::abs(b) * std::abs(omega) / (2.0 * a) + 1.0;
  double best_x = 0.0;
  double best_f = eval(Vector::Zero(1));
  const int steps = 20000;
  for (int k = 0; k <= steps; ++k) {
    const double t = -half_width + 2.0 * half_width * k / steps;
    const double f = a * t * t + b * std::sin(omega * t);
    if (f < best_f) {
      best_f = f;
      best_x = t;
    }
  }
  for (int k = 0; k < 50; ++k) {
    const double g = 2.0 * a * best_x + b * omega * std::cos(omega * best_x);
    const double h = 2.0 * a - b * omega * omega * std::sin(omega * best_x);
    if (!(h > 0.0)) break;
    best_x -= g / h;
  }
  argmin_ = best_x;
}

double SinusoidConvex1D::eval(const Vector& x) const {
  check_dim(x);
  return a_ * x[0] * x[0] + b_ * std::sin(omega_ * x[0]);
}

Vector SinusoidConvex1D::gradient(const Vector& x) const {
  check_dim(x);
  return Vector::Constant(1, 2.0 * a_ * x[0] + b_ * omega_ * std::cos(omega_ * x[0]));
}

Matrix SinusoidConvex1D::hessian(const Vector& x) const {
  check_dim(x);
  return Matrix::Constant(1, 1, 2.0 * a_ - b_ * omega_ * omega_ * std::sin(omega_ * x[0]));
}

double SinusoidConvex1D::known_min_value() const { return eval(Vector::Constant(1, argmin_)); }

double SinusoidConvex1D::smoothed(double x, double sigma) const {
  return a_ * (x * x + sigma * sigma) +
         b_ * std::exp(-0.5 * omega_ * omega_ * sigma * sigma) * std::sin(omega_ * x);
}

// ------------------------------------------------------------ NarrowValley2D

NarrowValley2D::NarrowValley2D(double curvature, Vector start)
    : StaticBenchmark(2), c_(curvature), start_(std::move(start)) {
  if (!(c_ > 0.0)) throw Error(ErrorCode::kConfigInvalid, "valley curvature must be positive");
  if (start_.size() == 0) {
    start_ = Vector(2);
    start_ << -1.2, 1.44;
  }
  check_dim(start_);
}

double NarrowValley2D::eval(const Vector& x) const {
  check_dim(x);
  const double a = 1.0 - x[0];
  const double b = x[1] - x[0] * x[0];
  return a * a + c_ * b * b;
}

Vector NarrowValley2D::gradient(const Vector& x) const {
  check_dim(x);
  const double b = x[1] - x[0] * x[0];
  Vector g(2);
  g << -2.0 * (1.0 - x[0]) - 4.0 * c_ * x[0] * b, 2.0 * c_ * b;
  return g;
}

Matrix NarrowValley2D::hessian(const Vector& x) const {
  check_dim(x);
  const double b = x[1] - x[0] * x[0];
  Matrix h(2, 2);
  h << 2.0 - 4.0 * c_ * b + 8.0 * c_ * x[0] * x[0], -4.0 * c_ * x[0],  //
      -4.0 * c_ * x[0], 2.0 * c_;
  return h;
}

Vector NarrowValley2D::residual(const Vector& x) const {
  check_dim(x);
  Vector r(2);
  r << kSqrt2 * (1.0 - x[0]), std::sqrt(2.0 * c_) * (x[1] - x[0] * x[0]);
  return r;
}

Matrix NarrowValley2D::jacobian(const Vector& x) const {
  check_dim(x);
  const double s = std::sqrt(2.0 * c_);
  Matrix j(2, 2);
  j << -kSqrt2, 0.0,  //
      -2.0 * s * x[0], s;
  return j;
}

std::unique_ptr<StaticBenchmark> make_benchmark(BenchmarkKind kind, Eigen::Index dim) {
  switch (kind) {
    case BenchmarkKind::kRosenbrock: return std::make_unique<Rosenbrock>(dim);
    case BenchmarkKind::kStyblinskiTang: return std::make_unique<StyblinskiTang>(dim);
    case BenchmarkKind::kRastrigin: return std::make_unique<Rastrigin>(dim);
    case BenchmarkKind::kAckley: return std::make_unique<Ackley>(dim);
    case BenchmarkKind::kSinusoidConvex1D: return std::make_unique<SinusoidConvex1D>();
    case BenchmarkKind::kNarrowValley2D: return std::make_unique<NarrowValley2D>();
  }
  throw Error(ErrorCode::kConfigInvalid, "unhandled benchmark kind");
}

}  // namespace guided_mppi
