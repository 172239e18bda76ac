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

#ifndef HOVI_DEL_FLOW_HPP
#define HOVI_DEL_FLOW_HPP

#include <functional>
#include <optional>

#include <Eigen/Core>

#include "hovi/discretization.hpp"
#include "hovi/jet_space.hpp"
#include "hovi/lagrangian.hpp"

namespace hovi {

/// Stacked discrete Euler-Lagrange residual at cur:
/// D_(k+i) L_d(prev, cur) + D_i L_d(cur, next), i = 1..k.
Eigen::VectorXd del_residual(const DiscreteLagrangian& ld, const Jet& prev, const Jet& cur, const Jet& next, double h);

/// [[D_13, D_14], [D_23, D_24]] (generally the left-right block of the
/// second derivative), the Jacobian of the step map.
Eigen::MatrixXd Wd_matrix(const DiscreteLagrangian& ld, const Pair& s);

struct StepOptions {
  /// Residual target relative to the size of the momenta being matched.
  double tolerance = 1e-12;
  int max_iterations = 50;
};

/// Newton scratch space, reused across the steps of one run.
struct StepWorkspace {
  Eigen::VectorXd iterate;
  Eigen::VectorXd residual;
  Eigen::MatrixXd jacobian;
  int iterations = 0;
  double residual_norm = 0.0;

  void clear();
};

/// Solves the DEL equations for the next state. The default guess
/// extrapolates linearly, 2 cur - prev.
Jet step(const DiscreteLagrangian& ld, const Jet& prev, const Jet& cur, double h,
         const std::optional<Jet>& guess = std::nullopt, const StepOptions& options = {},
         StepWorkspace* workspace = nullptr);

using InvariantFn = std::function<Eigen::VectorXd(const Pair&)>;

/// Runs the two-point recursion from (x0, x1) over the grid. Diagnostics hold
/// one entry per produced state (index k >= 2, stored at k - 2) with the DEL
/// residual and, when given, the invariant evaluated on (x_(k-1), x_k).
Path run(const DiscreteLagrangian& ld, const Jet& x0, const Jet& x1, const Gridd& grid,
         const InvariantFn& invariant = {}, const StepOptions& options = {});

/// Builds the second grid state from an initial order-3 jet by integrating the
/// continuous flow over one step.
Jet seed_second_point(const LagrangianModel& lagrangian, const Jet& initial_jet3, double h, int substeps = 16);

/// (q1 - q0)/h - (v0 + v1)/2, conserved by both spline methods.
Eigen::VectorXd spline_phi(const Pair& s);

/// Cubic Hermite interpolation of boundary data (q, v) over the grid.
std::vector<Jet> hermite_guess(const Jet& xa, const Jet& xb, const Gridd& grid);

struct PathOptions {
  double tolerance = 1e-8;
  int max_iterations = 100;
  int max_halvings = 40;
  /// When the full Newton step does not lower the residual, fall back to a
  /// positive-definite shifted step with backtracking on the summed action
  /// (the residual is its gradient). Suits problems whose discrete action is
  /// bounded below, such as the lifted optimal control costs.
  bool minimize_action = true;
};

struct PathSolution {
  Path path;
  /// sum of L_d over the steps
  double action = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Solves all DEL equations of a path at once with the end states pinned,
/// using Newton with a sparse block-tridiagonal Jacobian.
PathSolution solve_path_bvp(const DiscreteLagrangian& ld, const Jet& xa, const Jet& xb, const Gridd& grid,
                            const std::vector<Jet>& guess = {}, const PathOptions& options = {});

/// Max DEL residual over the interior of a path.
double max_del_residual(const DiscreteLagrangian& ld, const Path& path);

}  // namespace hovi

#endif  // HOVI_DEL_FLOW_HPP
