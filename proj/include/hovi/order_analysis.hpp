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

#ifndef HOVI_ORDER_ANALYSIS_HPP
#define HOVI_ORDER_ANALYSIS_HPP

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hovi/discretization.hpp"
#include "hovi/jet_space.hpp"
#include "hovi/lagrangian.hpp"
#include "hovi/regularized_bvp.hpp"

namespace hovi {

/// Errors at or below this are treated as zero.
inline constexpr double kExactFloor = 1e-13;

struct OrderReport {
  std::string scheme;
  /// strictly decreasing step sizes
  std::vector<double> h;
  std::vector<double> errors;
  /// slope of log(error) against log(h)
  double slope = 0.0;
  /// integrator order, slope - 1 (error ~ C h^(r+1))
  double order = 0.0;
  /// RMS residual of the log-log fit
  double fit_residual = 0.0;
  /// errors[i] / errors[i+1]
  std::vector<double> ratios;
  /// every error at or below kExactFloor
  bool exact = false;

  [[nodiscard]] std::string to_json() const;
  /// Columns h,error with 17 significant digits.
  [[nodiscard]] std::string to_csv() const;
};

/// Boundary data (x(0), x(h)) taken from one fixed trajectory.
using BoundaryFamily = std::function<Pair(double h)>;

/// Samples q(t) = q0 + v0 t + a0 t^2/2 + j0 t^3/6, an exact solution of the
/// spline Lagrangian.
BoundaryFamily cubic_family(const Eigen::VectorXd& q0, const Eigen::VectorXd& v0, const Eigen::VectorXd& a0,
                            const Eigen::VectorXd& j0);

/// Samples the continuous flow of `lagrangian` from an order-3 jet
/// (RK4, `substeps` per sample).
BoundaryFamily flow_family(const LagrangianModel& lagrangian, const Jet& jet3, int substeps = 256);

/// |L_d(s) - L_d^e(s)| with the exact discrete Lagrangian supplied directly.
double local_error(const DiscreteLagrangian& ld, const DiscreteLagrangian& exact, const Pair& s);

/// Same, with L_d^e computed from the continuous Lagrangian.
double local_error(const DiscreteLagrangian& ld, const LagrangianModel& lagrangian, const Jet& q1jet,
                   const Jet& q2jet, double h, ExactMethod method = ExactMethod::kShooting);

/// Local errors over a geometric, strictly decreasing list of at least four
/// step sizes, with a log-log fit. Step sizes are evaluated on up to
/// `workers` threads.
OrderReport estimate_order(const DiscreteLagrangian& ld, const DiscreteLagrangian& exact, const BoundaryFamily& family,
                           const std::vector<double>& h_values, int workers = 1);

/// h0, h0/2, h0/4, ... (count values).
std::vector<double> halving_sequence(double h0, int count);

}  // namespace hovi

#endif  // HOVI_ORDER_ANALYSIS_HPP
