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

#ifndef GUIDED_MPPI_PROBLEMS_CARTPOLE_HPP_
#define GUIDED_MPPI_PROBLEMS_CARTPOLE_HPP_

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "guided_mppi/models/problem.hpp"

namespace guided_mppi {

// State layout: cart position [m], pole angle [rad, 0 = upright], cart
// velocity [m/s], pole angular velocity [rad/s].
using CartPoleState = std::array<double, 4>;

struct CartPoleSpec {
  double cart_mass = 1.0;    // kg
  double pole_mass = 0.1;    // kg
  double pole_length = 0.5;  // m, pivot to pole center of mass
  double gravity = 9.81;     // m/s^2
  double horizon = 2.5;      // s
  double dt = 0.05;          // s
  CartPoleState state0 = {0.0, std::numbers::pi, 0.0, 0.0};
  CartPoleState goal = {0.0, 0.0, 0.0, 0.0};
  CartPoleState q = {1.0, 10.0, 0.1, 0.1};              // running state weights
  CartPoleState q_terminal = {100.0, 1000.0, 10.0, 10.0};
  double r = 1e-3;  // control weight

  // Throws kConfigInvalid on nonpositive masses/length/dt or when
  // horizon / dt is not an integer.
  void validate() const;
  int steps() const;
};

/// One semi-implicit Euler step of the frictionless cart-pole under force u [N].
CartPoleState cartpole_step(const CartPoleSpec& spec, const CartPoleState& x, double u);

/// T + 1 states starting from spec.state0. Throws kNonFiniteState if the
/// integration diverges and kDimensionMismatch unless controls has T entries.
std::vector<CartPoleState> cartpole_rollout(const CartPoleSpec& spec, const Vector& controls);

/// sum_t u_t^2 r + sum_{t=1}^{T-1} e_t^T Q e_t + e_T^T Q_T e_T with e = x - goal.
double cartpole_cost(const CartPoleSpec& spec, const Vector& controls);

/// Reverse-mode (adjoint) gradient through the rollout.
Vector cartpole_grad(const CartPoleSpec& spec, const Vector& controls);

/// Exact Hessian: forward-mode directional derivatives of the adjoint
/// gradient, one pass per control.
Matrix cartpole_hessian(const CartPoleSpec& spec, const Vector& controls);

/// Stacked residual with 0.5 ||R||^2 == cartpole_cost: sqrt(2 r) u_t for
/// every step, then sqrt(2 W) (x_t - goal) for t = 1..T.
Vector cartpole_residual(const CartPoleSpec& spec, const Vector& controls);

/// Jacobian of cartpole_residual by forward sensitivity propagation.
Matrix cartpole_jacobian(const CartPoleSpec& spec, const Vector& controls);

/// Mechanical energy of the uniform-rod cart-pole (pivot height as zero
/// potential).
double cartpole_energy(const CartPoleSpec& spec, const CartPoleState& x);

// Trajectory optimization over the T control forces.
class CartPoleProblem final : public Problem {
 public:
  explicit CartPoleProblem(CartPoleSpec spec = {});

  std::string name() const override { return "cartpole"; }
  Eigen::Index dim() const override { return steps_; }
  // +inf when the rollout diverges.
  double eval(const Vector& u) const override;
  bool has_gradient() const override { return true; }
  bool has_hessian() const override { return true; }
  bool has_residual() const override { return true; }
  Vector gradient(const Vector& u) const override;
  Matrix hessian(const Vector& u) const override;
  Vector residual(const Vector& u) const override;
  Matrix jacobian(const Vector& u) const override;
  std::optional<Vector> known_optimum() const override { return reference_; }

  // Attaches a reference optimum (e.g. from newton_reference).
  void set_reference(Vector u_star) { reference_ = std::move(u_star); }
  const CartPoleSpec& spec() const { return spec_; }

 private:
  CartPoleSpec spec_;
  Eigen::Index steps_;
  std::optional<Vector> reference_;
};

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_PROBLEMS_CARTPOLE_HPP_
