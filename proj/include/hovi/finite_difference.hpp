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

#ifndef HOVI_FINITE_DIFFERENCE_HPP
#define HOVI_FINITE_DIFFERENCE_HPP

#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Core>

namespace hovi::fd {

using ScalarFn = std::function<double(const Eigen::VectorXd&)>;
using VectorFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Central-difference step for first derivatives: cbrt(eps) * (1 + |x|).
inline double first_derivative_step(double x) {
  static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  return base * (1.0 + std::abs(x));
}

/// Step for second differences of a scalar: eps^(1/4) * (1 + |x|).
inline double second_derivative_step(double x) {
  static const double base = std::pow(std::numeric_limits<double>::epsilon(), 0.25);
  return base * (1.0 + std::abs(x));
}

Eigen::VectorXd gradient(const ScalarFn& f, const Eigen::VectorXd& x);

/// Central-difference Jacobian. `step_scale` overrides the default relative
/// step (the step becomes step_scale * max(1, |x_i|)) when positive.
Eigen::MatrixXd jacobian(const VectorFn& f, const Eigen::VectorXd& x, double step_scale = -1.0);

/// Hessian from values only (second differences), symmetrized.
Eigen::MatrixXd hessian(const ScalarFn& f, const Eigen::VectorXd& x);

}  // namespace hovi::fd

#endif  // HOVI_FINITE_DIFFERENCE_HPP
