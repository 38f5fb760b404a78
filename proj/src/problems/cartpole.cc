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

#include "guided_mppi/problems/cartpole.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "guided_mppi/core/error.hpp"
#include "guided_mppi/problems/dual.hpp"

namespace guided_mppi {

namespace {

template <typename T>
using State = std::array<T, 4>;

template <typename T>
State<T> step(const CartPoleSpec& spec, const State<T>& x, const T& u) {
  using std::cos;
  using std::sin;
  const double total_mass = spec.cart_mass + spec.pole_mass;
  const double ml = spec.pole_mass * spec.pole_length;
  const T s = sin(x[1]);
  const T c = cos(x[1]);
  const T temp = (u + ml * x[3] * x[3] * s) / total_mass;
  const T theta_acc = (spec.gravity * s - c * temp) /
                      (spec.pole_length * (4.0 / 3.0 - spec.pole_mass * c * c / total_mass));
  const T cart_acc = temp - ml * theta_acc * c / total_mass;
  State<T> next;
  next[2] = x[2] + spec.dt * cart_acc;
  next[3] = x[3] + spec.dt * theta_acc;
  next[0] = x[0] + spec.dt * next[2];
  next[1] = x[1] + spec.dt * next[3];
  return next;
}

template <typename T>
void check_finite(const State<T>& x, int t) {
  for (const T& v : x) {
    if (!std::isfinite(primal(v))) {
      throw Error(ErrorCode::kNonFiniteState,
                  "cart-pole state diverged at step " + std::to_string(t));
    }
  }
}

void check_controls(const CartPoleSpec& spec, const Vector& controls) {
  if (controls.size() != spec.steps()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(spec.steps()) + " controls, got " +
                    std::to_string(controls.size()));
  }
}

// Forward rollout with per-step Jacobians A_t = dx_{t+1}/dx_t and
// B_t = dx_{t+1}/du_t, all in scalar type S.
template <typename S>
struct Linearization {
  std::vector<State<S>> x;
  std::vector<std::array<State<S>, 4>> a;  // a[t][i][j] = d x_{t+1,i} / d x_{t,j}
  std::vector<State<S>> b;
};

template <typename S>
Linearization<S> linearize(const CartPoleSpec& spec, const std::vector<S>& u) {
  using D = Dual<S, 5>;
  const int steps = static_cast<int>(u.size());
  Linearization<S> lin;
  lin.x.resize(steps + 1);
  lin.a.resize(steps);
  lin.b.resize(steps);
  for (int i = 0; i < 4; ++i) lin.x[0][i] = S(spec.state0[i]);
  for (int t = 0; t < steps; ++t) {
    State<D> xd;
    for (int j = 0; j < 4; ++j) xd[j] = D::variable(lin.x[t][j], j);
    const D ud = D::variable(u[t], 4);
    const State<D> next = step<D>(spec, xd, ud);
    for (int i = 0; i < 4; ++i) {
      lin.x[t + 1][i] = next[i].v;
      for (int j = 0; j < 4; ++j) lin.a[t][i][j] = next[i].d[j];
      lin.b[t][i] = next[i].d[4];
    }
    check_finite(lin.x[t + 1], t + 1);
  }
  return lin;
}

template <typename S>
std::vector<S> adjoint_gradient(const CartPoleSpec& spec, const std::vector<S>& u) {
  const int steps = static_cast<int>(u.size());
  const Linearization<S> lin = linearize(spec, u);
  std::vector<S> grad(steps);
  State<S> costate;
  for (int i = 0; i < 4; ++i) {
    costate[i] = 2.0 * spec.q_terminal[i] * (lin.x[steps][i] - spec.goal[i]);
  }
  for (int t = steps - 1; t >= 0; --t) {
    S g = 2.0 * spec.r * u[t];
    for (int i = 0; i < 4; ++i) g += lin.b[t][i] * costate[i];
    grad[t] = g;
    State<S> prev;
    for (int j = 0; j < 4; ++j) {
      S acc = t >= 1 ? S(2.0 * spec.q[j]) * (lin.x[t][j] - spec.goal[j]) : S(0.0);
      for (int i = 0; i < 4; ++i) acc += lin.a[t][i][j] * costate[i];
      prev[j] = acc;
    }
    costate = prev;
  }
  return grad;
}

std::vector<double> to_std(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

void CartPoleSpec::validate() const {
  if (!(cart_mass > 0.0) || !(pole_mass > 0.0) || !(pole_length > 0.0)) {
    throw Error(ErrorCode::kConfigInvalid, "cart-pole masses and length must be positive");
  }
  if (!(dt > 0.0) || !(horizon > 0.0)) {
    throw Error(ErrorCode::kConfigInvalid, "cart-pole dt and horizon must be positive");
  }
  const double ratio = horizon / dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    throw Error(ErrorCode::kConfigInvalid, "horizon / dt must be an integer");
  }
  if (!(r > 0.0)) throw Error(ErrorCode::kConfigInvalid, "control weight must be positive");
}

int CartPoleSpec::steps() const { return static_cast<int>(std::lround(horizon / dt)); }

CartPoleState cartpole_step(const CartPoleSpec& spec, const CartPoleState& x, double u) {
  return step<double>(spec, x, u);
}

std::vector<CartPoleState> cartpole_rollout(const CartPoleSpec& spec, const Vector& controls) {
  check_controls(spec, controls);
  std::vector<CartPoleState> traj(controls.size() + 1);
  traj[0] = spec.state0;
  for (Eigen::Index t = 0; t < controls.size(); ++t) {
    traj[t + 1] = step<double>(spec, traj[t], controls[t]);
    check_finite(traj[t + 1], static_cast<int>(t + 1));
  }
  return traj;
}

double cartpole_cost(const CartPoleSpec& spec, const Vector& controls) {
  const std::vector<CartPoleState> traj = cartpole_rollout(spec, controls);
  const int steps = static_cast<int>(controls.size());
  double cost = spec.r * controls.squaredNorm();
  for (int t = 1; t <= steps; ++t) {
    const CartPoleState& w = t < steps ? spec.q : spec.q_terminal;
    for (int i = 0; i < 4; ++i) {
      const double e = traj[t][i] - spec.goal[i];
      cost += w[i] * e * e;
    }
  }
  return cost;
}

Vector cartpole_grad(const CartPoleSpec& spec, const Vector& controls) {
  check_controls(spec, controls);
  const std::vector<double> g = adjoint_gradient<double>(spec, to_std(controls));
  return Eigen::Map<const Vector>(g.data(), static_cast<Eigen::Index>(g.size()));
}

Matrix cartpole_hessian(const CartPoleSpec& spec, const Vector& controls) {
  check_controls(spec, controls);
  using D1 = Dual<double, 1>;
  const Eigen::Index n = controls.size();
  Matrix h(n, n);
  std::vector<D1> u(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) u[k] = D1(controls[k]);
    u[j].d[0] = 1.0;
    const std::vector<D1> g = adjoint_gradient<D1>(spec, u);
    for (Eigen::Index k = 0; k < n; ++k) h(k, j) = g[k].d[0];
  }
  return symmetrize(h);
}

Vector cartpole_residual(const CartPoleSpec& spec, const Vector& controls) {
  const std::vector<CartPoleState> traj = cartpole_rollout(spec, controls);
  const int steps = static_cast<int>(controls.size());
  Vector res(5 * steps);
  res.head(steps) = std::sqrt(2.0 * spec.r) * controls;
  for (int t = 1; t <= steps; ++t) {
    const CartPoleState& w = t < steps ? spec.q : spec.q_terminal;
    for (int i = 0; i < 4; ++i) {
      res[steps + 4 * (t - 1) + i] = std::sqrt(2.0 * w[i]) * (traj[t][i] - spec.goal[i]);
    }
  }
  return res;
}

Matrix cartpole_jacobian(const CartPoleSpec& spec, const Vector& controls) {
  check_controls(spec, controls);
  const int steps = static_cast<int>(controls.size());
  const Linearization<double> lin = linearize(spec, to_std(controls));
  Matrix jac = Matrix::Zero(5 * steps, steps);
  jac.topLeftCorner(steps, steps).diagonal().setConstant(std::sqrt(2.0 * spec.r));
  Matrix sens = Matrix::Zero(4, steps);  // d x_t / d u
  for (int t = 0; t < steps; ++t) {
    Eigen::Matrix4d a;
    Eigen::Vector4d b;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) a(i, j) = lin.a[t][i][j];
      b[i] = lin.b[t][i];
    }
    sens = a * sens;
    sens.col(t) += b;
    const CartPoleState& w = t + 1 < steps ? spec.q : spec.q_terminal;
    for (int i = 0; i < 4; ++i) {
      jac.row(steps + 4 * t + i) = std::sqrt(2.0 * w[i]) * sens.row(i);
    }
  }
  return jac;
}

double cartpole_energy(const CartPoleSpec& spec, const CartPoleState& x) {
  const double mp = spec.pole_mass;
  const double l = spec.pole_length;
  const double c = std::cos(x[1]);
  return 0.5 * (spec.cart_mass + mp) * x[2] * x[2] + mp * l * x[2] * x[3] * c +
         (2.0 / 3.0) * mp * l * l * x[3] * x[3] + mp * spec.gravity * l * c;
}

CartPoleProblem::CartPoleProblem(CartPoleSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  steps_ = spec_.steps();
}

double CartPoleProblem::eval(const Vector& u) const {
  check_dim(u);
  try {
    return cartpole_cost(spec_, u);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNonFiniteState) return std::numeric_limits<double>::infinity();
    throw;
  }
}

Vector CartPoleProblem::gradient(const Vector& u) const { return cartpole_grad(spec_, u); }
Matrix CartPoleProblem::hessian(const Vector& u) const { return cartpole_hessian(spec_, u); }
Vector CartPoleProblem::residual(const Vector& u) const { return cartpole_residual(spec_, u); }
Matrix CartPoleProblem::jacobian(const Vector& u) const { return cartpole_jacobian(spec_, u); }

}  // namespace guided_mppi
