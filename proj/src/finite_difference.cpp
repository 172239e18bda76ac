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

#include "hovi/finite_difference.hpp"

#include <algorithm>

namespace hovi::fd {

Eigen::VectorXd gradient(const ScalarFn& f, const Eigen::VectorXd& x) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double step = first_derivative_step(x(i));
    xp(i) = x(i) + step;
    const double fp = f(xp);
    xp(i) = x(i) - step;
    const double fm = f(xp);
    xp(i) = x(i);
    g(i) = (fp - fm) / (2.0 * step);
  }
  return g;
}

Eigen::MatrixXd jacobian(const VectorFn& f, const Eigen::VectorXd& x, double step_scale) {
  Eigen::VectorXd xp = x;
  Eigen::MatrixXd jac;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double step = step_scale > 0.0 ? step_scale * std::max(1.0, std::abs(x(i)))
                                         : first_derivative_step(x(i));
    xp(i) = x(i) + step;
    const Eigen::VectorXd fp = f(xp);
    xp(i) = x(i) - step;
    const Eigen::VectorXd fm = f(xp);
    xp(i) = x(i);
    if (i == 0) jac.resize(fp.size(), x.size());
    jac.col(i) = (fp - fm) / (2.0 * step);
  }
  return jac;
}

Eigen::MatrixXd hessian(const ScalarFn& f, const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd hess(n, n);
  Eigen::VectorXd xp = x;
  const double f0 = f(x);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double si = second_derivative_step(x(i));
    xp(i) = x(i) + si;
    const double fp = f(xp);
    xp(i) = x(i) - si;
    const double fm = f(xp);
    xp(i) = x(i);
    hess(i, i) = (fp - 2.0 * f0 + fm) / (si * si);
    for (Eigen::Index j = 0; j < i; ++j) {
      const double sj = second_derivative_step(x(j));
      auto eval = [&](double a, double b) {
        xp(i) = x(i) + a * si;
        xp(j) = x(j) + b * sj;
        const double v = f(xp);
        xp(i) = x(i);
        xp(j) = x(j);
        return v;
      };
      const double mixed = (eval(1, 1) - eval(1, -1) - eval(-1, 1) + eval(-1, -1)) / (4.0 * si * sj);
      hess(i, j) = mixed;
      hess(j, i) = mixed;
    }
  }
  return hess;
}

}  // namespace hovi::fd
