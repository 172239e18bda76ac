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

#include "hovi/discretization.hpp"

#include <stdexcept>

#include "hovi/finite_difference.hpp"

namespace hovi {

DiscreteLagrangian::DiscreteLagrangian(std::string name, int k, int n, ValueFn value, GradientFn gradient,
                                       HessianFn hessian)
    : name_(std::move(name)),
      k_(k),
      n_(n),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)) {
  if (k_ < 1 || n_ < 1) throw std::invalid_argument("DiscreteLagrangian: k and n must be positive");
  if (!value_) throw std::invalid_argument("DiscreteLagrangian: value callback required");
}

double DiscreteLagrangian::value(const Vector& x, double h) const { return value_(x, h); }

DiscreteLagrangian::Vector DiscreteLagrangian::gradient(const Vector& x, double h) const {
  if (gradient_) return gradient_(x, h);
  return fd::gradient([&](const Vector& y) { return value_(y, h); }, x);
}

DiscreteLagrangian::Matrix DiscreteLagrangian::hessian(const Vector& x, double h) const {
  if (hessian_) return hessian_(x, h);
  if (gradient_) {
    Matrix jac = fd::jacobian([&](const Vector& y) { return gradient_(y, h); }, x);
    return 0.5 * (jac + jac.transpose());
  }
  return fd::hessian([&](const Vector& y) { return value_(y, h); }, x);
}

namespace {

// Expands a 3x4 coefficient table to the (3n x 4n) argument map.
Eigen::MatrixXd argument_map(const Eigen::Matrix<double, 3, 4>& c, int n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3 * n, 4 * n);
  for (int r = 0; r < 3; ++r) {
    for (int col = 0; col < 4; ++col) {
      if (c(r, col) != 0.0) a.block(r * n, col * n, n, n).diagonal().setConstant(c(r, col));
    }
  }
  return a;
}

void check_size(const Eigen::VectorXd& x, int n, const char* where) {
  if (x.size() != 4 * n) throw std::invalid_argument(std::string(where) + ": state length must be 4n");
}

}  // namespace

DiscreteLagrangian composite_scheme(std::string name, const LagrangianModel& lagrangian, TermBuilder terms) {
  const int n = lagrangian.dim();
  auto value = [lagrangian, terms, n](const Eigen::VectorXd& x, double h) {
    check_size(x, n, "composite_scheme");
    double sum = 0.0;
    for (const LinearTerm& t : terms(h)) sum += t.weight * lagrangian.value(Eigen::VectorXd(argument_map(t.coeffs, n) * x));
    return sum;
  };
  auto gradient = [lagrangian, terms, n](const Eigen::VectorXd& x, double h) {
    check_size(x, n, "composite_scheme");
    Eigen::VectorXd g = Eigen::VectorXd::Zero(4 * n);
    for (const LinearTerm& t : terms(h)) {
      const Eigen::MatrixXd a = argument_map(t.coeffs, n);
      g += t.weight * a.transpose() * lagrangian.gradient(a * x);
    }
    return g;
  };
  auto hessian = [lagrangian, terms, n](const Eigen::VectorXd& x, double h) {
    check_size(x, n, "composite_scheme");
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(4 * n, 4 * n);
    for (const LinearTerm& t : terms(h)) {
      const Eigen::MatrixXd a = argument_map(t.coeffs, n);
      hess += t.weight * a.transpose() * lagrangian.hessian(a * x) * a;
    }
    return hess;
  };
  return DiscreteLagrangian(std::move(name), 2, n, value, gradient, hessian);
}

DiscreteLagrangian taylor_average(const LagrangianModel& lagrangian, bool midpoint_averages) {
  auto terms = [midpoint_averages](double h) {
    const double h2 = h * h;
    LinearTerm left;
    LinearTerm right;
    left.weight = right.weight = 0.5 * h;
    if (midpoint_averages) {
      left.coeffs.row(0) << 0.5, 0.0, 0.5, 0.0;
      left.coeffs.row(1) << 0.0, 0.5, 0.0, 0.5;
      right.coeffs.topRows(2) = left.coeffs.topRows(2);
    } else {
      left.coeffs.row(0) << 1.0, 0.0, 0.0, 0.0;
      left.coeffs.row(1) << 0.0, 1.0, 0.0, 0.0;
      right.coeffs.row(0) << 0.0, 0.0, 1.0, 0.0;
      right.coeffs.row(1) << 0.0, 0.0, 0.0, 1.0;
    }
    left.coeffs.row(2) << -2.0 / h2, -2.0 / h, 2.0 / h2, 0.0;
    right.coeffs.row(2) << 2.0 / h2, 0.0, -2.0 / h2, 2.0 / h;
    return std::vector<LinearTerm>{left, right};
  };
  return composite_scheme(midpoint_averages ? "taylor_average_midpoint" : "taylor_average", lagrangian, terms);
}

DiscreteLagrangian midpoint_difference(const LagrangianModel& lagrangian) {
  auto terms = [](double h) {
    LinearTerm t;
    t.weight = h;
    t.coeffs.row(0) << 0.5, 0.0, 0.5, 0.0;
    t.coeffs.row(1) << -1.0 / h, 0.0, 1.0 / h, 0.0;
    t.coeffs.row(2) << 0.0, -1.0 / h, 0.0, 1.0 / h;
    return std::vector<LinearTerm>{t};
  };
  return composite_scheme("midpoint_difference", lagrangian, terms);
}

DiscreteLagrangian trapezoid_velocity(const LagrangianModel& lagrangian, bool include_step_factor) {
  auto terms = [include_step_factor](double h) {
    const double c = include_step_factor ? h : 1.0;
    LinearTerm left;
    LinearTerm right;
    left.weight = right.weight = 0.5 * c;
    left.coeffs.row(0) << 1.0, 0.0, 0.0, 0.0;
    left.coeffs.row(1) << 0.0, 1.0, 0.0, 0.0;
    right.coeffs.row(0) << 0.0, 0.0, 1.0, 0.0;
    right.coeffs.row(1) << 0.0, 0.0, 0.0, 1.0;
    left.coeffs.row(2) << 0.0, -1.0 / h, 0.0, 1.0 / h;
    right.coeffs.row(2) = left.coeffs.row(2);
    return std::vector<LinearTerm>{left, right};
  };
  return composite_scheme(include_step_factor ? "trapezoid_velocity" : "trapezoid_velocity_literal", lagrangian,
                          terms);
}

DiscreteLagrangian spline_exact(int n) {
  if (n < 1) throw std::invalid_argument("spline_exact: dimension must be positive");
  auto value = [n](const Eigen::VectorXd& x, double h) {
    check_size(x, n, "spline_exact");
    const Eigen::VectorXd dq = x.segment(0, n) - x.segment(2 * n, n);
    const Eigen::VectorXd v0 = x.segment(n, n);
    const Eigen::VectorXd v1 = x.segment(3 * n, n);
    return 6.0 / (h * h * h) * dq.squaredNorm() + 6.0 / (h * h) * dq.dot(v0 + v1) +
           2.0 / h * (v0.squaredNorm() + v0.dot(v1) + v1.squaredNorm());
  };
  auto gradient = [n](const Eigen::VectorXd& x, double h) {
    check_size(x, n, "spline_exact");
    const Eigen::VectorXd dq = x.segment(0, n) - x.segment(2 * n, n);
    const Eigen::VectorXd v0 = x.segment(n, n);
    const Eigen::VectorXd v1 = x.segment(3 * n, n);
    Eigen::VectorXd g(4 * n);
    const Eigen::VectorXd d1 = 12.0 / (h * h * h) * dq + 6.0 / (h * h) * (v0 + v1);
    g.segment(0, n) = d1;
    g.segment(n, n) = 6.0 / (h * h) * dq + 2.0 / h * (2.0 * v0 + v1);
    g.segment(2 * n, n) = -d1;
    g.segment(3 * n, n) = 6.0 / (h * h) * dq + 2.0 / h * (v0 + 2.0 * v1);
    return g;
  };
  auto hessian = [n](const Eigen::VectorXd& /*x*/, double h) {
    const double h2 = h * h;
    const double h3 = h2 * h;
    Eigen::Matrix4d c;
    c << 12.0 / h3, 6.0 / h2, -12.0 / h3, 6.0 / h2,
         6.0 / h2, 4.0 / h, -6.0 / h2, 2.0 / h,
         -12.0 / h3, -6.0 / h2, 12.0 / h3, -6.0 / h2,
         6.0 / h2, 2.0 / h, -6.0 / h2, 4.0 / h;
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(4 * n, 4 * n);
    for (int r = 0; r < 4; ++r) {
      for (int col = 0; col < 4; ++col) hess.block(r * n, col * n, n, n).diagonal().setConstant(c(r, col));
    }
    return hess;
  };
  return DiscreteLagrangian("spline_exact", 2, n, value, gradient, hessian);
}

std::vector<Eigen::VectorXd> block_partials(const DiscreteLagrangian& ld, const Pair& s) {
  if (s.k() != ld.k() || s.dim() != ld.dim()) throw std::invalid_argument("block_partials: state shape mismatch");
  const Eigen::VectorXd g = ld.gradient(s);
  std::vector<Eigen::VectorXd> out;
  const int n = ld.dim();
  for (int b = 0; b < 2 * ld.k(); ++b) out.emplace_back(g.segment(b * n, n));
  return out;
}

const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names = {"taylor_average",     "taylor_average_midpoint",
                                                 "midpoint_difference", "trapezoid_velocity",
                                                 "trapezoid_velocity_literal", "spline_exact"};
  return names;
}

DiscreteLagrangian make_scheme(const std::string& name, const LagrangianModel& lagrangian) {
  if (name == "taylor_average") return taylor_average(lagrangian);
  if (name == "taylor_average_midpoint") return taylor_average(lagrangian, true);
  if (name == "midpoint_difference") return midpoint_difference(lagrangian);
  if (name == "trapezoid_velocity") return trapezoid_velocity(lagrangian);
  if (name == "trapezoid_velocity_literal") return trapezoid_velocity(lagrangian, false);
  if (name == "spline_exact") return spline_exact(lagrangian.dim());
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

}  // namespace hovi
