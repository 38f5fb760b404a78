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

#ifndef GUIDED_MPPI_PROBLEMS_DUAL_HPP_
#define GUIDED_MPPI_PROBLEMS_DUAL_HPP_

#include <array>
#include <cmath>
#include <type_traits>

namespace guided_mppi {

// Forward-mode dual number with N tangent directions over scalar V. Nesting
// (V itself a Dual) gives second derivatives.
template <typename V, int N>
struct Dual {
  V v{};
  std::array<V, N> d{};

  Dual() = default;
  Dual(double x) : v(x) {}  // NOLINT(google-explicit-constructor)
  Dual(const V& x, const std::array<V, N>& dx) : v(x), d(dx) {}

  static Dual variable(const V& x, int direction) {
    Dual out;
    out.v = x;
    out.d[direction] = V(1.0);
    return out;
  }
};

template <typename T>
struct IsDual : std::false_type {};
template <typename V, int N>
struct IsDual<Dual<V, N>> : std::true_type {};

inline double primal(double x) { return x; }
template <typename V, int N>
double primal(const Dual<V, N>& x) {
  return primal(x.v);
}

template <typename V, int N>
Dual<V, N> operator-(const Dual<V, N>& a) {
  Dual<V, N> r;
  r.v = -a.v;
  for (int i = 0; i < N; ++i) r.d[i] = -a.d[i];
  return r;
}

template <typename V, int N>
Dual<V, N> operator+(const Dual<V, N>& a, const Dual<V, N>& b) {
  Dual<V, N> r;
  r.v = a.v + b.v;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
  return r;
}

template <typename V, int N>
Dual<V, N> operator-(const Dual<V, N>& a, const Dual<V, N>& b) {
  Dual<V, N> r;
  r.v = a.v - b.v;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
  return r;
}

template <typename V, int N>
Dual<V, N> operator*(const Dual<V, N>& a, const Dual<V, N>& b) {
  Dual<V, N> r;
  r.v = a.v * b.v;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  return r;
}

template <typename V, int N>
Dual<V, N> operator/(const Dual<V, N>& a, const Dual<V, N>& b) {
  Dual<V, N> r;
  r.v = a.v / b.v;
  for (int i = 0; i < N; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) / b.v;
  return r;
}

template <typename V, int N>
Dual<V, N> operator+(const Dual<V, N>& a, double b) {
  return a + Dual<V, N>(b);
}
template <typename V, int N>
Dual<V, N> operator+(double a, const Dual<V, N>& b) {
  return Dual<V, N>(a) + b;
}
template <typename V, int N>
Dual<V, N> operator-(const Dual<V, N>& a, double b) {
  return a - Dual<V, N>(b);
}
template <typename V, int N>
Dual<V, N> operator-(double a, const Dual<V, N>& b) {
  return Dual<V, N>(a) - b;
}
template <typename V, int N>
Dual<V, N> operator*(const Dual<V, N>& a, double b) {
  Dual<V, N> r;
  r.v = a.v * b;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b;
  return r;
}
template <typename V, int N>
Dual<V, N> operator*(double a, const Dual<V, N>& b) {
  return b * a;
}
template <typename V, int N>
Dual<V, N> operator/(const Dual<V, N>& a, double b) {
  Dual<V, N> r;
  r.v = a.v / b;
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] / b;
  return r;
}
template <typename V, int N>
Dual<V, N> operator/(double a, const Dual<V, N>& b) {
  return Dual<V, N>(a) / b;
}

template <typename V, int N>
Dual<V, N>& operator+=(Dual<V, N>& a, const Dual<V, N>& b) {
  a = a + b;
  return a;
}

template <typename V, int N>
Dual<V, N> sin(const Dual<V, N>& a) {
  using std::cos;
  using std::sin;
  Dual<V, N> r;
  r.v = sin(a.v);
  const V c = cos(a.v);
  for (int i = 0; i < N; ++i) r.d[i] = c * a.d[i];
  return r;
}

template <typename V, int N>
Dual<V, N> cos(const Dual<V, N>& a) {
  using std::cos;
  using std::sin;
  Dual<V, N> r;
  r.v = cos(a.v);
  const V s = -sin(a.v);
  for (int i = 0; i < N; ++i) r.d[i] = s * a.d[i];
  return r;
}

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_PROBLEMS_DUAL_HPP_
