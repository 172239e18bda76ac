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

#ifndef HOVI_LAGRANGIAN_HPP
#define HOVI_LAGRANGIAN_HPP

#include <functional>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "hovi/dual.hpp"
#include "hovi/jet_space.hpp"

namespace hovi {

/// Continuous second-order Lagrangian L(q, q', q'') on T^(2)Q = R^{3n}.
///
/// Arguments are always the stacked vector x = (q, q', q''). Derivatives
/// come either from a templated functor through nested dual numbers
/// (`make_lagrangian`) or from central differences of the value
/// (`make_fd_lagrangian`); the latter is flagged by
/// `finite_difference_backed()`.
class LagrangianModel {
 public:
  using Vector = Eigen::VectorXd;
  using Matrix = Eigen::MatrixXd;
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;
  using HessianFn = std::function<Matrix(const Vector&)>;
  /// (x, w) -> D^3 L(x)[w, w, .], a covector of length 3n.
  using CurvatureFn = std::function<Vector(const Vector&, const Vector&)>;

  LagrangianModel(std::string name, int n, ValueFn value, GradientFn gradient = {},
                  HessianFn hessian = {}, CurvatureFn curvature = {});

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] int dim() const { return n_; }
  [[nodiscard]] bool finite_difference_backed() const { return fd_backed_; }

  [[nodiscard]] double value(const Vector& x) const;
  /// Stacked (dL/dq, dL/dq', dL/dq'').
  [[nodiscard]] Vector gradient(const Vector& x) const;
  /// Full 3n x 3n second-partial matrix; its 3x3 grid of n x n blocks holds
  /// the six distinct blocks (qq, qv, qa, vv, va, aa) and their transposes.
  [[nodiscard]] Matrix hessian(const Vector& x) const;
  [[nodiscard]] Vector third_directional(const Vector& x, const Vector& w) const;

  [[nodiscard]] double value(const Jet& jet) const;

 private:
  std::string name_;
  int n_;
  bool fd_backed_;
  ValueFn value_;
  GradientFn gradient_;
  HessianFn hessian_;
  CurvatureFn curvature_;
};

/// First-order (mechanical) Lagrangian L(q, q') on TQ, x = (q, q').
class MechanicalModel {
 public:
  using Vector = Eigen::VectorXd;
  using Matrix = Eigen::MatrixXd;

  MechanicalModel(std::string name, int n, std::function<double(const Vector&)> value,
                  std::function<Vector(const Vector&)> gradient = {},
                  std::function<Matrix(const Vector&)> hessian = {});

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] int dim() const { return n_; }
  [[nodiscard]] bool finite_difference_backed() const { return fd_backed_; }
  [[nodiscard]] double value(const Vector& x) const;
  [[nodiscard]] Vector gradient(const Vector& x) const;
  [[nodiscard]] Matrix hessian(const Vector& x) const;

 private:
  std::string name_;
  int n_;
  bool fd_backed_;
  std::function<double(const Vector&)> value_;
  std::function<Vector(const Vector&)> gradient_;
  std::function<Matrix(const Vector&)> hessian_;
};

/// A point (q, q', p, p~) of T*TQ.
struct CotangentTQPoint {
  Eigen::VectorXd q;
  Eigen::VectorXd v;
  Eigen::VectorXd p;
  Eigen::VectorXd ptilde;

  [[nodiscard]] Eigen::VectorXd stacked() const;
  static CotangentTQPoint from_stacked(const Eigen::VectorXd& x, int n);
};

namespace detail {

template <typename S, typename F>
S call_second_order(const F& f, const VectorX<S>& x, int n) {
  return f(VectorX<S>(x.segment(0, n)), VectorX<S>(x.segment(n, n)), VectorX<S>(x.segment(2 * n, n)));
}

template <typename S, typename F>
S call_first_order(const F& f, const VectorX<S>& x, int n) {
  return f(VectorX<S>(x.segment(0, n)), VectorX<S>(x.segment(n, n)));
}

template <typename Call>
Eigen::VectorXd dual_gradient(const Call& call, const Eigen::VectorXd& x) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd e = Eigen::VectorXd::Zero(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    e(i) = 1.0;
    g(i) = top_derivative(call(seed<Dual1>(x, {&e})));
    e(i) = 0.0;
  }
  return g;
}

template <typename Call>
Eigen::MatrixXd dual_hessian(const Call& call, const Eigen::VectorXd& x) {
  const Eigen::Index m = x.size();
  Eigen::MatrixXd hess(m, m);
  Eigen::VectorXd ei = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd ej = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    ei(i) = 1.0;
    for (Eigen::Index j = 0; j <= i; ++j) {
      ej(j) = 1.0;
      const double v = top_derivative(call(seed<Dual2>(x, {&ei, &ej})));
      hess(i, j) = v;
      hess(j, i) = v;
      ej(j) = 0.0;
    }
    ei(i) = 0.0;
  }
  return hess;
}

}  // namespace detail

/// Builds a model from a functor with a member template
/// `template <class S> S operator()(const VectorX<S>& q, const VectorX<S>& v, const VectorX<S>& a) const`.
/// All derivatives are exact (forward-mode nested duals).
template <typename F>
LagrangianModel make_lagrangian(std::string name, int n, F f) {
  auto value = [f, n](const Eigen::VectorXd& x) { return detail::call_second_order<double>(f, x, n); };
  auto gradient = [f, n](const Eigen::VectorXd& x) {
    return detail::dual_gradient([&](const VectorX<Dual1>& xs) { return detail::call_second_order<Dual1>(f, xs, n); }, x);
  };
  auto hessian = [f, n](const Eigen::VectorXd& x) {
    return detail::dual_hessian([&](const VectorX<Dual2>& xs) { return detail::call_second_order<Dual2>(f, xs, n); }, x);
  };
  auto curvature = [f, n](const Eigen::VectorXd& x, const Eigen::VectorXd& w) {
    Eigen::VectorXd out(x.size());
    Eigen::VectorXd e = Eigen::VectorXd::Zero(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      e(i) = 1.0;
      out(i) = top_derivative(detail::call_second_order<Dual3>(f, seed<Dual3>(x, {&w, &w, &e}), n));
      e(i) = 0.0;
    }
    return out;
  };
  return LagrangianModel(std::move(name), n, value, gradient, hessian, curvature);
}

/// Model backed only by values; every derivative is a central difference.
LagrangianModel make_fd_lagrangian(std::string name, int n, std::function<double(const Eigen::VectorXd&)> value);

/// Mechanical model from a functor `template <class S> S operator()(q, v) const`.
template <typename F>
MechanicalModel make_mechanical(std::string name, int n, F f) {
  auto value = [f, n](const Eigen::VectorXd& x) { return detail::call_first_order<double>(f, x, n); };
  auto gradient = [f, n](const Eigen::VectorXd& x) {
    return detail::dual_gradient([&](const VectorX<Dual1>& xs) { return detail::call_first_order<Dual1>(f, xs, n); }, x);
  };
  auto hessian = [f, n](const Eigen::VectorXd& x) {
    return detail::dual_hessian([&](const VectorX<Dual2>& xs) { return detail::call_first_order<Dual2>(f, xs, n); }, x);
  };
  return MechanicalModel(std::move(name), n, value, gradient, hessian);
}

/// Controlled Euler-Lagrange forces u = d/dt dL/dq' - dL/dq for a mechanical
/// functor, evaluated in any scalar type (the time derivative is expanded
/// along (q', q'') with nested duals, so lifted costs stay differentiable).
template <typename S, typename F>
VectorX<S> controlled_forces_t(const F& mech, const VectorX<S>& q, const VectorX<S>& v, const VectorX<S>& a) {
  using D1 = Dual<S>;
  using D2 = Dual<D1>;
  const Eigen::Index n = q.size();
  VectorX<S> u(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    VectorX<D2> qd(n);
    VectorX<D2> vd(n);
    VectorX<D1> qs(n);
    VectorX<D1> vs(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      qd(j) = D2(D1(q(j), S(0.0)), D1(v(j), S(0.0)));
      vd(j) = D2(D1(v(j), S(i == j ? 1.0 : 0.0)), D1(a(j), S(0.0)));
      qs(j) = D1(q(j), S(i == j ? 1.0 : 0.0));
      vs(j) = D1(v(j), S(0.0));
    }
    const D2 rate = mech(qd, vd);
    const D1 dq = mech(qs, vs);
    u(i) = rate.du.du - dq.du;
  }
  return u;
}

/// Euler-Lagrange expression d^2/dt^2 dL/dq'' - d/dt dL/dq' + dL/dq at an
/// order-4 jet, with all total derivatives expanded by the chain rule.
Eigen::VectorXd el_residual(const LagrangianModel& lagrangian, const Jet& jet);

/// Solves the Euler-Lagrange equations for q^(4) given an order-3 jet.
/// Throws SolverError(kSingularHessian) when W = d^2L/dq''^2 is singular.
Eigen::VectorXd fourth_order_rhs(const LagrangianModel& lagrangian, const Jet& jet);

/// Legendre transform (q, q', dL/dq' - d/dt dL/dq'', dL/dq'') at an order-3 jet.
CotangentTQPoint legendre(const LagrangianModel& lagrangian, const Jet& jet);

struct HessianW {
  Eigen::MatrixXd matrix;
  bool is_regular = false;
};

/// W = d^2L/dq''dq''; regular when |det W| > 1e-10 * ||W||_max^n.
HessianW hessian_W(const LagrangianModel& lagrangian, const Jet& jet);

/// u = d/dt dL/dq' - dL/dq at an order-2 jet.
Eigen::VectorXd controlled_forces(const MechanicalModel& mechanical, const Jet& jet);

}  // namespace hovi

#endif  // HOVI_LAGRANGIAN_HPP
