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

#include "hovi/lagrangian.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

#include "hovi/errors.hpp"
#include "hovi/finite_difference.hpp"

namespace hovi {

namespace {

Eigen::VectorXd seg(const Eigen::VectorXd& x, int block, int n) { return x.segment(block * n, n); }

Eigen::VectorXd stacked_jet(const Jet& jet, int first, int count) {
  const int n = jet.dim();
  Eigen::VectorXd out(count * n);
  for (int j = 0; j < count; ++j) out.segment(j * n, n) = jet.component(first + j);
  return out;
}

void require_order(const Jet& jet, int order, const char* where) {
  if (jet.order() < order) {
    throw std::invalid_argument(std::string(where) + ": jet of order >= " + std::to_string(order) +
                                " required, got " + std::to_string(jet.order()));
  }
}

}  // namespace

LagrangianModel::LagrangianModel(std::string name, int n, ValueFn value, GradientFn gradient,
                                 HessianFn hessian, CurvatureFn curvature)
    : name_(std::move(name)),
      n_(n),
      fd_backed_(!gradient || !hessian || !curvature),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)),
      curvature_(std::move(curvature)) {
  if (n_ < 1) throw std::invalid_argument("LagrangianModel: dimension must be positive");
  if (!value_) throw std::invalid_argument("LagrangianModel: value callback required");
}

double LagrangianModel::value(const Vector& x) const { return value_(x); }

double LagrangianModel::value(const Jet& jet) const {
  require_order(jet, 2, "LagrangianModel::value");
  return value_(stacked_jet(jet, 0, 3));
}

LagrangianModel::Vector LagrangianModel::gradient(const Vector& x) const {
  if (gradient_) return gradient_(x);
  return fd::gradient(value_, x);
}

LagrangianModel::Matrix LagrangianModel::hessian(const Vector& x) const {
  if (hessian_) return hessian_(x);
  if (gradient_) {
    Matrix jac = fd::jacobian([this](const Vector& y) { return gradient_(y); }, x);
    return 0.5 * (jac + jac.transpose());
  }
  return fd::hessian(value_, x);
}

LagrangianModel::Vector LagrangianModel::third_directional(const Vector& x, const Vector& w) const {
  if (curvature_) return curvature_(x, w);
  const double wnorm = w.lpNorm<Eigen::Infinity>();
  if (wnorm == 0.0) return Vector::Zero(x.size());
  const double step = fd::second_derivative_step(x.lpNorm<Eigen::Infinity>()) / wnorm;
  const Vector plus = hessian(x + step * w) * w;
  const Vector minus = hessian(x - step * w) * w;
  return (plus - minus) / (2.0 * step);
}

LagrangianModel make_fd_lagrangian(std::string name, int n, std::function<double(const Eigen::VectorXd&)> value) {
  return LagrangianModel(std::move(name), n, std::move(value));
}

MechanicalModel::MechanicalModel(std::string name, int n, std::function<double(const Vector&)> value,
                                 std::function<Vector(const Vector&)> gradient,
                                 std::function<Matrix(const Vector&)> hessian)
    : name_(std::move(name)),
      n_(n),
      fd_backed_(!gradient || !hessian),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)) {
  if (n_ < 1) throw std::invalid_argument("MechanicalModel: dimension must be positive");
  if (!value_) throw std::invalid_argument("MechanicalModel: value callback required");
}

double MechanicalModel::value(const Vector& x) const { return value_(x); }

MechanicalModel::Vector MechanicalModel::gradient(const Vector& x) const {
  if (gradient_) return gradient_(x);
  return fd::gradient(value_, x);
}

MechanicalModel::Matrix MechanicalModel::hessian(const Vector& x) const {
  if (hessian_) return hessian_(x);
  return fd::hessian(value_, x);
}

Eigen::VectorXd CotangentTQPoint::stacked() const {
  const Eigen::Index n = q.size();
  Eigen::VectorXd out(4 * n);
  out << q, v, p, ptilde;
  return out;
}

CotangentTQPoint CotangentTQPoint::from_stacked(const Eigen::VectorXd& x, int n) {
  if (x.size() != 4 * n) throw std::invalid_argument("CotangentTQPoint::from_stacked: length mismatch");
  return {x.segment(0, n), x.segment(n, n), x.segment(2 * n, n), x.segment(3 * n, n)};
}

Eigen::VectorXd el_residual(const LagrangianModel& lagrangian, const Jet& jet) {
  require_order(jet, 4, "el_residual");
  const int n = lagrangian.dim();
  const Eigen::VectorXd x = stacked_jet(jet, 0, 3);
  const Eigen::VectorXd w = stacked_jet(jet, 1, 3);
  const Eigen::VectorXd w2 = stacked_jet(jet, 2, 3);
  const Eigen::VectorXd g = lagrangian.gradient(x);
  const Eigen::MatrixXd hess = lagrangian.hessian(x);
  const Eigen::VectorXd curv = lagrangian.third_directional(x, w);

  // d/dt dL/dq' = H_v. w ;  d^2/dt^2 dL/dq'' = D^3L[w,w]_a + H_a. w2
  const Eigen::VectorXd dt_lv = hess.middleRows(n, n) * w;
  const Eigen::VectorXd ddt_la = seg(curv, 2, n) + hess.middleRows(2 * n, n) * w2;
  return ddt_la - dt_lv + seg(g, 0, n);
}

Eigen::VectorXd fourth_order_rhs(const LagrangianModel& lagrangian, const Jet& jet) {
  require_order(jet, 3, "fourth_order_rhs");
  const int n = lagrangian.dim();
  const Jet base = jet.truncated(3).extended(Eigen::VectorXd::Zero(n));
  const HessianW w = hessian_W(lagrangian, jet);
  if (!w.is_regular) {
    throw SolverError(SolverFailure::kSingularHessian, "d2L/dq''2 is singular; no explicit fourth-order flow");
  }
  // The residual is affine in q^(4) with coefficient W.
  const Eigen::VectorXd r0 = el_residual(lagrangian, base);
  return w.matrix.partialPivLu().solve(-r0);
}

CotangentTQPoint legendre(const LagrangianModel& lagrangian, const Jet& jet) {
  require_order(jet, 3, "legendre");
  const int n = lagrangian.dim();
  const Eigen::VectorXd x = stacked_jet(jet, 0, 3);
  const Eigen::VectorXd w = stacked_jet(jet, 1, 3);
  const Eigen::VectorXd g = lagrangian.gradient(x);
  const Eigen::MatrixXd hess = lagrangian.hessian(x);
  const Eigen::VectorXd dt_la = hess.middleRows(2 * n, n) * w;
  return {jet.q(), jet.deriv(1), seg(g, 1, n) - dt_la, seg(g, 2, n)};
}

HessianW hessian_W(const LagrangianModel& lagrangian, const Jet& jet) {
  require_order(jet, 2, "hessian_W");
  const int n = lagrangian.dim();
  const Eigen::MatrixXd hess = lagrangian.hessian(stacked_jet(jet, 0, 3));
  HessianW out;
  out.matrix = hess.block(2 * n, 2 * n, n, n);
  const double scale = out.matrix.cwiseAbs().maxCoeff();
  const double det = out.matrix.determinant();
  out.is_regular = std::abs(det) > 1e-10 * std::pow(scale, n);
  return out;
}

Eigen::VectorXd controlled_forces(const MechanicalModel& mechanical, const Jet& jet) {
  require_order(jet, 2, "controlled_forces");
  const int n = mechanical.dim();
  Eigen::VectorXd x(2 * n);
  x << jet.q(), jet.deriv(1);
  Eigen::VectorXd w(2 * n);
  w << jet.deriv(1), jet.deriv(2);
  const Eigen::VectorXd g = mechanical.gradient(x);
  const Eigen::MatrixXd hess = mechanical.hessian(x);
  return hess.middleRows(n, n) * w - g.head(n);
}

}  // namespace hovi
