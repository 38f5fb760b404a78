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

#include "guided_mppi/models/finite_difference.hpp"

#include <cmath>
#include <limits>

namespace guided_mppi {

namespace {

double quartic_step(double xi) {
  static const double kBase = std::pow(std::numeric_limits<double>::epsilon(), 0.25);
  return kBase * std::max(1.0, std::abs(xi));
}

}  // namespace

double central_step(double xi) {
  static const double kBase = std::cbrt(std::numeric_limits<double>::epsilon());
  return kBase * std::max(1.0, std::abs(xi));
}

Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x) {
  Vector g(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = central_step(x[i]);
    probe[i] = x[i] + h;
    const double fp = f(probe);
    probe[i] = x[i] - h;
    const double fm = f(probe);
    probe[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Matrix fd_jacobian_of_gradient(const std::function<Vector(const Vector&)>& grad,
                               const Vector& x) {
  const Eigen::Index d = x.size();
  Matrix h(d, d);
  Vector probe = x;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double step = central_step(x[j]);
    probe[j] = x[j] + step;
    const Vector gp = grad(probe);
    probe[j] = x[j] - step;
    const Vector gm = grad(probe);
    probe[j] = x[j];
    h.col(j) = (gp - gm) / (2.0 * step);
  }
  return symmetrize(h);
}

Matrix fd_hessian(const std::function<double(const Vector&)>& f, const Vector& x) {
  const Eigen::Index d = x.size();
  Matrix h(d, d);
  Vector probe = x;
  const double f0 = f(x);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double hi = quartic_step(x[i]);
    probe[i] = x[i] + hi;
    const double fp = f(probe);
    probe[i] = x[i] - hi;
    const double fm = f(probe);
    probe[i] = x[i];
    h(i, i) = (fp - 2.0 * f0 + fm) / (hi * hi);
    for (Eigen::Index j = 0; j < i; ++j) {
      const double hj = quartic_step(x[j]);
      auto at = [&](double si, double sj) {
        probe[i] = x[i] + si * hi;
        probe[j] = x[j] + sj * hj;
        const double v = f(probe);
        probe[i] = x[i];
        probe[j] = x[j];
        return v;
      };
      const double v = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * hi * hj);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

}  // namespace guided_mppi
