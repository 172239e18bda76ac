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

#ifndef HOVI_NEWTON_HPP
#define HOVI_NEWTON_HPP

#include <functional>

#include <Eigen/Core>

#include "hovi/errors.hpp"

namespace hovi {

struct NewtonOptions {
  /// Converged when max|r| <= tolerance * scale.
  double tolerance = 1e-12;
  double scale = 1.0;
  int max_iterations = 50;
  int max_halvings = 30;
  /// A line search that cannot decrease |r| any further is accepted when
  /// max|r| <= stall_factor * tolerance * scale (roundoff floor).
  double stall_factor = 100.0;
  /// Reciprocal condition number below which the Jacobian is singular.
  double min_rcond = 1e-15;
};

struct NewtonResult {
  Eigen::VectorXd x;
  double residual_norm = 0.0;
  int iterations = 0;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Damped Newton with residual-norm halving line search on a dense system.
/// Throws SolverError(singular_kind) for a singular Jacobian and
/// SolverError(kNoConvergence) when the iteration budget runs out.
NewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian, Eigen::VectorXd x0,
                          const NewtonOptions& options,
                          SolverFailure singular_kind = SolverFailure::kSingularHessian);

}  // namespace hovi

#endif  // HOVI_NEWTON_HPP
