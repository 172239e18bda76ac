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

#ifndef HOVI_LEGENDRE_D_HPP
#define HOVI_LEGENDRE_D_HPP

#include <functional>
#include <optional>

#include <Eigen/Core>

#include "hovi/discretization.hpp"
#include "hovi/jet_space.hpp"
#include "hovi/lagrangian.hpp"
#include "hovi/regularized_bvp.hpp"

namespace hovi {

/// (q, v, p, p~) on T*TQ.
using MomentaState = CotangentTQPoint;

/// (q1, v1, D3 L_d, D4 L_d): momenta attached to the later point.
MomentaState fplus(const DiscreteLagrangian& ld, const Pair& s);
/// (q0, v0, -D1 L_d, -D2 L_d).
MomentaState fminus(const DiscreteLagrangian& ld, const Pair& s);

struct InverseOptions {
  double tolerance = 1e-12;
  int max_iterations = 50;
};

/// The pair s with fminus(s) = m (solves for the right point).
Pair fminus_inverse(const DiscreteLagrangian& ld, const MomentaState& m, double h,
                    const std::optional<Jet>& guess = std::nullopt, const InverseOptions& options = {});
/// The pair s with fplus(s) = m (solves for the left point).
Pair fplus_inverse(const DiscreteLagrangian& ld, const MomentaState& m, double h,
                   const std::optional<Jet>& guess = std::nullopt, const InverseOptions& options = {});

/// F~ = F+ o (F-)^-1.
MomentaState hamiltonian_step(const DiscreteLagrangian& ld, const MomentaState& m, double h,
                              const InverseOptions& options = {});

/// F- o F_Ld o (F-)^-1.
MomentaState hamiltonian_step_minus(const DiscreteLagrangian& ld, const MomentaState& m, double h,
                                    const InverseOptions& options = {});
/// F+ o F_Ld o (F+)^-1.
MomentaState hamiltonian_step_plus(const DiscreteLagrangian& ld, const MomentaState& m, double h,
                                   const InverseOptions& options = {});

/// Negative control: hamiltonian_step followed by q <- q + drift * q_in.
MomentaState drifted_hamiltonian_step(const DiscreteLagrangian& ld, const MomentaState& m, double h,
                                      double drift = 1e-3);

using StackedMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Canonical [[0, I], [-I, 0]] in the (q, v | p, p~) split, size 4n.
Eigen::MatrixXd canonical_omega(int n);

/// max |J^T Omega J - Omega| with J the central-difference Jacobian of `map`
/// at x (step `step_scale` * max(1, |x_i|)).
double symplectic_defect(const StackedMap& map, const Eigen::VectorXd& x, double step_scale = 1e-6);
double symplectic_defect(const DiscreteLagrangian& ld, const MomentaState& m, double h, double step_scale = 1e-6);

struct Theorem41Result {
  /// max |F- L_d^e - FL(jet at 0)|
  double left_err = 0.0;
  /// max |F+ L_d^e - FL(jet at h)|
  double right_err = 0.0;
  ShootingSolution bvp;
};

/// Compares the discrete Legendre transforms of the exact discrete
/// Lagrangian with the continuous one at the two ends of the BVP solution.
/// Without `exact`, L_d^e is the shooting action with its substep count
/// pinned and its partials come from central differences.
Theorem41Result theorem41_check(const LagrangianModel& lagrangian, const Jet& q1jet, const Jet& q2jet, double h,
                                const DiscreteLagrangian* exact = nullptr, const ShootingOptions& shooting = {});

}  // namespace hovi

#endif  // HOVI_LEGENDRE_D_HPP
