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

#ifndef GUIDED_MPPI_MODELS_FINITE_DIFFERENCE_HPP_
#define GUIDED_MPPI_MODELS_FINITE_DIFFERENCE_HPP_

#include <functional>

#include "guided_mppi/core/types.hpp"
#include "guided_mppi/models/problem.hpp"

namespace guided_mppi {

// Central-difference step cbrt(eps) * max(1, |x_i|).
double central_step(double xi);

// Central differences of a scalar function; 2d evaluations.
Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x);

// Central differences of a vector-valued gradient, symmetrized; 2d calls.
Matrix fd_jacobian_of_gradient(const std::function<Vector(const Vector&)>& grad,
                               const Vector& x);

// Second differences of a scalar function, step eps^(1/4) * max(1, |x_i|).
Matrix fd_hessian(const std::function<double(const Vector&)>& f, const Vector& x);

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_MODELS_FINITE_DIFFERENCE_HPP_
