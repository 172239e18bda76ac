// Copyright 2026 The hovi Authors
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

#ifndef HOVI_DUAL_HPP
#define HOVI_DUAL_HPP

#include <cmath>
#include <vector>

#include <Eigen/Core>

namespace hovi {

/// Forward-mode dual number `re + eps * du` with eps^2 = 0.
///
/// Nesting (`Dual<Dual<double>>`, ...) yields mixed higher derivatives: each
/// level carries one independent infinitesimal, and the coefficient of the
/// product of all of them is the corresponding mixed directional derivative.
template <typename T>
struct Dual {
  T re{};
  T du{};

  constexpr Dual() = default;
  constexpr Dual(double value) : re(value), du(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr Dual(T value, T derivative) : re(std::move(value)), du(std::move(derivative)) {}

  Dual& operator+=(const Dual& o) { re += o.re; du += o.du; return *this; }
  Dual& operator-=(const Dual& o) { re -= o.re; du -= o.du; return *this; }
  Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.re + b.re, a.du + b.du}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.re - b.re, a.du - b.du}; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.re * b.re, a.re * b.du + a.du * b.re}; }
  friend Dual operator/(const Dual& a, const Dual& b) {
    T inv = T(1.0) / b.re;
    return {a.re * inv, (a.du - a.re * inv * b.du) * inv};
  }
  friend Dual operator-(const Dual& a) { return {-a.re, -a.du}; }
  friend Dual operator+(const Dual& a) { return a; }

  friend Dual operator+(const Dual& a, double b) { return {a.re + b, a.du}; }
  friend Dual operator+(double a, const Dual& b) { return {a + b.re, b.du}; }
  friend Dual operator-(const Dual& a, double b) { return {a.re - b, a.du}; }
  friend Dual operator-(double a, const Dual& b) { return {a - b.re, -b.du}; }
  friend Dual operator*(const Dual& a, double b) { return {a.re * b, a.du * b}; }
  friend Dual operator*(double a, const Dual& b) { return {a * b.re, a * b.du}; }
  friend Dual operator/(const Dual& a, double b) { return {a.re / b, a.du / b}; }
  friend Dual operator/(double a, const Dual& b) { return Dual(a) / b; }

  // Comparisons look at the primal value only.
  friend bool operator<(const Dual& a, const Dual& b) { return a.re < b.re; }
  friend bool operator>(const Dual& a, const Dual& b) { return a.re > b.re; }
  friend bool operator<=(const Dual& a, const Dual& b) { return a.re <= b.re; }
  friend bool operator>=(const Dual& a, const Dual& b) { return a.re >= b.re; }
  friend bool operator==(const Dual& a, const Dual& b) { return a.re == b.re && a.du == b.du; }
  friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }
};

template <typename T>
Dual<T> sin(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return {sin(x.re), cos(x.re) * x.du};
}

template <typename T>
Dual<T> cos(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return {cos(x.re), -(sin(x.re) * x.du)};
}

template <typename T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  T s = sqrt(x.re);
  return {s, x.du / (2.0 * s)};
}

template <typename T>
Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  T e = exp(x.re);
  return {e, e * x.du};
}

template <typename T>
Dual<T> log(const Dual<T>& x) {
  using std::log;
  return {log(x.re), x.du / x.re};
}

template <typename T>
Dual<T> abs(const Dual<T>& x) {
  return x.re < T(0.0) ? -x : x;
}

/// Innermost primal value.
inline double primal(double x) { return x; }
template <typename T>
double primal(const Dual<T>& x) {
  return primal(x.re);
}

/// Coefficient of the product of all infinitesimals (the top mixed derivative).
inline double top_derivative(double x) { return x; }
template <typename T>
double top_derivative(const Dual<T>& x) {
  return top_derivative(x.du);
}

namespace detail {

template <typename S>
struct Seed;

template <>
struct Seed<double> {
  static double make(double base, const double* /*dirs*/) { return base; }
};

template <typename T>
struct Seed<Dual<T>> {
  static Dual<T> make(double base, const double* dirs) {
    return {Seed<T>::make(base, dirs + 1), T(dirs[0])};
  }
};

}  // namespace detail

/// Lifts `x` to `x + e1*d1 + e2*d2 + ...` where the number of directions
/// equals the nesting depth of `S`. `directions[0]` belongs to the outermost
/// level.
template <typename S>
Eigen::Matrix<S, Eigen::Dynamic, 1> seed(const Eigen::VectorXd& x,
                                         const std::vector<const Eigen::VectorXd*>& directions) {
  Eigen::Matrix<S, Eigen::Dynamic, 1> out(x.size());
  std::vector<double> d(directions.size() + 1, 0.0);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    for (std::size_t k = 0; k < directions.size(); ++k) d[k] = (*directions[k])(i);
    out(i) = detail::Seed<S>::make(x(i), d.data());
  }
  return out;
}

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual1>;
using Dual3 = Dual<Dual2>;

}  // namespace hovi

namespace Eigen {

template <typename T>
struct NumTraits<hovi::Dual<T>> : NumTraits<double> {
  using Real = hovi::Dual<T>;
  using NonInteger = hovi::Dual<T>;
  using Nested = hovi::Dual<T>;
  using Literal = hovi::Dual<T>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2 * NumTraits<T>::ReadCost,
    AddCost = 2 * NumTraits<T>::AddCost,
    MulCost = 3 * NumTraits<T>::MulCost + NumTraits<T>::AddCost
  };
};

template <typename T, typename BinaryOp>
struct ScalarBinaryOpTraits<hovi::Dual<T>, double, BinaryOp> {
  using ReturnType = hovi::Dual<T>;
};

template <typename T, typename BinaryOp>
struct ScalarBinaryOpTraits<double, hovi::Dual<T>, BinaryOp> {
  using ReturnType = hovi::Dual<T>;
};

}  // namespace Eigen

#endif  // HOVI_DUAL_HPP
