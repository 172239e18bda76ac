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

#ifndef HOVI_DISCRETIZATION_HPP
#define HOVI_DISCRETIZATION_HPP

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hovi/jet_space.hpp"
#include "hovi/lagrangian.hpp"

namespace hovi {

/// A discrete Lagrangian on T^(k-1)Q x T^(k-1)Q.
///
/// Callbacks act on the packed state x = pack(PairState) of length 2kn and the
/// step h, which lives in the state so one scheme serves every step size.
/// Missing gradient/Hessian callbacks fall back to central differences.
class DiscreteLagrangian {
 public:
  using Vector = Eigen::VectorXd;
  using Matrix = Eigen::MatrixXd;
  using ValueFn = std::function<double(const Vector&, double)>;
  using GradientFn = std::function<Vector(const Vector&, double)>;
  using HessianFn = std::function<Matrix(const Vector&, double)>;

  DiscreteLagrangian(std::string name, int k, int n, ValueFn value, GradientFn gradient = {},
                     HessianFn hessian = {});

  [[nodiscard]] const std::string& name() const { return name_; }
  /// Number of jet components per endpoint (2 for TQ x TQ).
  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] int dim() const { return n_; }
  [[nodiscard]] int point_size() const { return k_ * n_; }
  [[nodiscard]] bool analytic_gradient() const { return static_cast<bool>(gradient_); }
  [[nodiscard]] bool analytic_hessian() const { return static_cast<bool>(hessian_); }

  [[nodiscard]] double value(const Vector& x, double h) const;
  /// Stacked (D_1, ..., D_2k) covectors.
  [[nodiscard]] Vector gradient(const Vector& x, double h) const;
  [[nodiscard]] Matrix hessian(const Vector& x, double h) const;

  [[nodiscard]] double value(const Pair& s) const { return value(pack(s), s.h()); }
  [[nodiscard]] Vector gradient(const Pair& s) const { return gradient(pack(s), s.h()); }
  [[nodiscard]] Matrix hessian(const Pair& s) const { return hessian(pack(s), s.h()); }

 private:
  std::string name_;
  int k_;
  int n_;
  ValueFn value_;
  GradientFn gradient_;
  HessianFn hessian_;
};

/// One term w(h) * L(A(h) x) of a composite scheme, with the argument map
/// A = coeffs (x) I_n: rows (q, q', q''), columns (q0, v0, q1, v1).
struct LinearTerm {
  double weight = 0.0;
  Eigen::Matrix<double, 3, 4> coeffs = Eigen::Matrix<double, 3, 4>::Zero();
};

using TermBuilder = std::function<std::vector<LinearTerm>(double h)>;

/// Sum of continuous-Lagrangian evaluations at points linear in the state.
/// Value, gradient and Hessian follow from L's by the chain rule.
DiscreteLagrangian composite_scheme(std::string name, const LagrangianModel& lagrangian, TermBuilder terms);

/// Endpoint Taylor accelerations a0 = 2/h^2 (q1 - q0 - h v0), a1 = 2/h^2 (q0 - q1 + h v1) and
/// L_d = h/2 (L(q0, v0, a0) + L(q1, v1, a1)). With `midpoint_averages` both
/// evaluations use ((q0+q1)/2, (v0+v1)/2) for position and velocity.
DiscreteLagrangian taylor_average(const LagrangianModel& lagrangian, bool midpoint_averages = false);

/// L_d = h L((q0+q1)/2, (q1-q0)/h, (v1-v0)/h).
DiscreteLagrangian midpoint_difference(const LagrangianModel& lagrangian);

/// L_d = c (L(q0, v0, (v1-v0)/h) + L(q1, v1, (v1-v0)/h)) / 2 with c = h, or
/// c = 1 when `include_step_factor` is false.
DiscreteLagrangian trapezoid_velocity(const LagrangianModel& lagrangian, bool include_step_factor = true);

/// Closed-form exact discrete Lagrangian of the n-dimensional cubic spline
/// problem, summed over components, with analytic partials.
DiscreteLagrangian spline_exact(int n);

/// (D_1, ..., D_2k) at s, each an n-covector.
std::vector<Eigen::VectorXd> block_partials(const DiscreteLagrangian& ld, const Pair& s);

/// Named construction used by the CLI: taylor_average, taylor_average_midpoint,
/// midpoint_difference, trapezoid_velocity, trapezoid_velocity_literal, spline_exact.
DiscreteLagrangian make_scheme(const std::string& name, const LagrangianModel& lagrangian);

/// Known names for make_scheme.
const std::vector<std::string>& scheme_names();

}  // namespace hovi

#endif  // HOVI_DISCRETIZATION_HPP
