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

#include "hovi/newton.hpp"

#include <Eigen/LU>

namespace hovi {

NewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian, Eigen::VectorXd x0,
                          const NewtonOptions& options, SolverFailure singular_kind) {
  NewtonResult out;
  out.x = std::move(x0);
  Eigen::VectorXd r = residual(out.x);
  double norm = r.lpNorm<Eigen::Infinity>();
  const double target = options.tolerance * options.scale;

  for (int it = 0; it < options.max_iterations; ++it) {
    out.iterations = it;
    out.residual_norm = norm;
    if (norm <= target) return out;

    const Eigen::MatrixXd jac = jacobian(out.x);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    if (!(lu.rcond() > options.min_rcond)) {
      throw SolverError(singular_kind, "Jacobian is singular (rcond " + std::to_string(lu.rcond()) + ")",
                        norm, it);
    }
    const Eigen::VectorXd dx = lu.solve(-r);

    double alpha = 1.0;
    bool accepted = false;
    for (int k = 0; k <= options.max_halvings; ++k, alpha *= 0.5) {
      Eigen::VectorXd trial = out.x + alpha * dx;
      Eigen::VectorXd r_trial = residual(trial);
      const double trial_norm = r_trial.lpNorm<Eigen::Infinity>();
      if (trial_norm < norm || trial_norm <= target) {
        out.x = std::move(trial);
        r = std::move(r_trial);
        norm = trial_norm;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      out.residual_norm = norm;
      if (norm <= options.stall_factor * target) return out;
      throw SolverError(SolverFailure::kNoConvergence, "line search stalled", norm, it);
    }
  }
  out.iterations = options.max_iterations;
  out.residual_norm = norm;
  if (norm <= target) return out;
  throw SolverError(SolverFailure::kNoConvergence,
                    "no convergence after " + std::to_string(options.max_iterations) + " iterations", norm,
                    options.max_iterations);
}

}  // namespace hovi
