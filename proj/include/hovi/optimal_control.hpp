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

#ifndef HOVI_OPTIMAL_CONTROL_HPP
#define HOVI_OPTIMAL_CONTROL_HPP

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hovi/del_flow.hpp"
#include "hovi/discretization.hpp"
#include "hovi/jet_space.hpp"
#include "hovi/lagrangian.hpp"

namespace hovi {

struct TwoLinkParams {
  double m1 = 0.375;
  double m2 = 0.25;
  double l1 = 1.5;
  double l2 = 1.0;
  double J1 = 0.375 * 1.5 * 1.5 / 3.0;
  double J2 = 0.25 * 1.0 * 1.0 / 3.0;
  double g = 9.8;

  /// Throws std::invalid_argument unless every field is positive.
  void validate() const;
};

/// Joint torques (u1, u2) of the arm at (theta, theta', theta''), written out
/// in closed form.
template <typename S>
VectorX<S> two_link_forces(const TwoLinkParams& p, const VectorX<S>& q, const VectorX<S>& v, const VectorX<S>& a) {
  using std::cos;
  using std::sin;
  const S s2 = sin(q(1));
  const S c2 = cos(q(1));
  const S c1 = cos(q(0));
  const S c12 = cos(q(0) + q(1));
  const double l12m2 = p.l1 * p.l2 * p.m2;
  const S m12 = 0.25 * p.m2 * p.l2 * p.l2 + p.J2 + 0.5 * l12m2 * c2;
  const double m22 = 0.25 * p.m2 * p.l2 * p.l2 + p.J2;
  const S m11 = l12m2 * c2 + (0.25 * p.m1 + p.m2) * p.l1 * p.l1 + 0.25 * p.m2 * p.l2 * p.l2 + p.J1 + p.J2;
  const S grav2 = 0.5 * p.m2 * p.l2 * p.g * c12;
  VectorX<S> u(2);
  u(0) = -l12m2 * s2 * v(1) * v(0) - 0.5 * l12m2 * s2 * v(1) * v(1) + grav2 + (p.m2 + 0.5 * p.m1) * p.g * p.l1 * c1 +
         m12 * a(1) + m11 * a(0);
  u(1) = 0.5 * l12m2 * s2 * v(0) * v(0) + m12 * a(0) + grav2 + m22 * a(1);
  return u;
}

/// u at an order-2 jet of the arm.
Eigen::VectorXd two_link_forces(const TwoLinkParams& p, const Jet& jet);

/// Kinetic minus potential energy of the arm; angles measured from the
/// horizontal, so (-pi/2, 0) hangs straight down.
struct TwoLinkMechanical {
  TwoLinkParams p;
  template <typename S>
  S operator()(const VectorX<S>& q, const VectorX<S>& v) const {
    using std::cos;
    using std::sin;
    const S w = v(0) + v(1);
    const S kinetic = (1.0 / 8.0) * (p.m1 + 4.0 * p.m2) * p.l1 * p.l1 * v(0) * v(0) +
                      (1.0 / 8.0) * p.m2 * p.l2 * p.l2 * w * w + 0.5 * p.m2 * p.l1 * p.l2 * cos(q(1)) * v(0) * w +
                      0.5 * p.J1 * v(0) * v(0) + 0.5 * p.J2 * w * w;
    const S height = 0.5 * p.m1 * p.l1 * sin(q(0)) + p.m2 * p.l1 * sin(q(0)) + 0.5 * p.m2 * p.l2 * sin(q(0) + q(1));
    return kinetic - p.g * height;
  }
};

MechanicalModel two_link_mechanical(const TwoLinkParams& p);

/// Elbow penalty: slope -slope below lo, 0 on [lo, hi], +slope above hi.
double joint_limit_penalty(double theta2, double slope = 1000.0, double lo = 0.0,
                           double hi = 170.0 * std::numbers::pi / 180.0);

/// Smoothed version used inside Newton: each kink is replaced by
/// slope * (x + sqrt(x^2 + delta^2)) / 2.
template <typename S>
S joint_limit_penalty_smooth(const S& theta2, double slope = 1000.0, double lo = 0.0,
                             double hi = 170.0 * std::numbers::pi / 180.0, double delta = 1e-6) {
  using std::sqrt;
  const S below = lo - theta2;
  const S above = theta2 - hi;
  return 0.5 * slope * (below + sqrt(below * below + delta * delta)) +
         0.5 * slope * (above + sqrt(above * above + delta * delta));
}

/// Cost 1/2 |u|^2.
struct QuadraticControlCost {
  template <typename S>
  S operator()(const VectorX<S>& /*q*/, const VectorX<S>& /*v*/, const VectorX<S>& u) const {
    return 0.5 * u.dot(u);
  }
};

struct NoPenalty {
  template <typename S>
  S operator()(const VectorX<S>& /*q*/) const {
    return S(0.0);
  }
};

/// Smoothed joint-limit penalty on the second angle.
struct ElbowPenalty {
  double slope = 1000.0;
  double lo = 0.0;
  double hi = 170.0 * std::numbers::pi / 180.0;
  double delta = 1e-6;
  template <typename S>
  S operator()(const VectorX<S>& q) const {
    return joint_limit_penalty_smooth(q(1), slope, lo, hi, delta);
  }
};

/// L~(q, q', q'') = C(q, q', u(q, q', q'')) + V(q) with u the controlled
/// forces of a mechanical functor.
template <typename Mech, typename Cost, typename Penalty = NoPenalty>
struct LiftedCost {
  Mech mech;
  Cost cost;
  Penalty penalty;
  template <typename S>
  S operator()(const VectorX<S>& q, const VectorX<S>& v, const VectorX<S>& a) const {
    const VectorX<S> u = controlled_forces_t<S>(mech, q, v, a);
    return cost(q, v, u) + penalty(q);
  }
};

/// Same, with the arm's closed-form torques in place of the generic ones.
template <typename Cost, typename Penalty = NoPenalty>
struct TwoLinkLiftedCost {
  TwoLinkParams p;
  Cost cost;
  Penalty penalty;
  template <typename S>
  S operator()(const VectorX<S>& q, const VectorX<S>& v, const VectorX<S>& a) const {
    return cost(q, v, two_link_forces<S>(p, q, v, a)) + penalty(q);
  }
};

template <typename Mech, typename Cost, typename Penalty = NoPenalty>
LagrangianModel lift_cost(std::string name, int n, Mech mech, Cost cost, Penalty penalty = {}) {
  return make_lagrangian(std::move(name), n, LiftedCost<Mech, Cost, Penalty>{mech, cost, penalty});
}

/// A fully actuated optimal control problem, already lifted.
struct OCProblem {
  std::string name;
  /// L~ on T^(2)Q
  LagrangianModel lifted;
  /// u at an order-2 jet, for reporting
  std::function<Eigen::VectorXd(const Jet&)> forces;
  Jet start;
  Jet end;
  double horizon = 1.0;
  int steps = 2;

  /// Throws std::invalid_argument when N < 2, T <= 0 or dimensions differ.
  void validate() const;
};

template <typename Mech, typename Cost, typename Penalty = NoPenalty>
OCProblem make_ocp(std::string name, int n, Mech mech, Cost cost, const Jet& start, const Jet& end, double horizon,
                   int steps, Penalty penalty = {}) {
  auto forces = [mech](const Jet& jet) {
    return controlled_forces_t<double>(mech, jet.q(), jet.deriv(1), jet.deriv(2));
  };
  return OCProblem{name, lift_cost(name, n, mech, cost, penalty), forces, start, end, horizon, steps};
}

struct TwoLinkOptions {
  TwoLinkParams params;
  double horizon = 10.0;
  int steps = 200;
  bool penalty = false;
  double penalty_slope = 1000.0;
  double penalty_delta = 1e-6;
  /// (theta1, theta2, theta1', theta2') at both ends
  Eigen::Vector4d start{-std::numbers::pi / 2.0, 0.0, 0.0, 0.0};
  Eigen::Vector4d end{std::numbers::pi / 2.0, 0.0, 0.0, 0.0};
};

/// The arm problem with cost 1/2 (u1^2 + u2^2) (+ elbow penalty).
OCProblem two_link_problem(const TwoLinkOptions& options = {});

/// Free particle of unit mass with cost 1/2 |u|^2, so L~ = 1/2 |q''|^2.
OCProblem free_particle_problem(const Jet& start, const Jet& end, double horizon, int steps);

/// Path options sized for the arm (more Newton iterations than the default).
inline PathOptions two_link_path_options() {
  PathOptions o;
  o.max_iterations = 2000;
  return o;
}

struct OCSolution {
  PathSolution solution;
  /// discrete action sum L~_d
  double cost = 0.0;
  /// accelerations at the nodes by finite differences of the velocities
  std::vector<Eigen::VectorXd> accelerations;
  /// u at each node from (q, v, a)
  std::vector<Eigen::VectorXd> controls;
};

/// Discretizes L~ with the named scheme and solves the whole discrete path
/// with both ends pinned.
OCSolution solve_ocp(const OCProblem& problem, const std::string& scheme = "taylor_average_midpoint",
                     const PathOptions& options = {}, const std::vector<Jet>& guess = {});

/// Solves the arm problem. With the penalty on, the kink smoothing starts
/// at 1e-2 rad and shrinks tenfold per solve down to penalty_delta, each
/// solve warm-started from the previous path.
OCSolution solve_two_link(const TwoLinkOptions& options, const std::string& scheme = "taylor_average_midpoint",
                          const PathOptions& path_options = two_link_path_options());

/// Second-order finite-difference derivative of node velocities
/// (one-sided at the ends).
std::vector<Eigen::VectorXd> node_accelerations(const Path& path);

/// t, q..., v..., u... with 17 significant digits; the two-link case gets
/// t,theta1,theta2,dtheta1,dtheta2,u1,u2.
std::string ocp_csv(const OCSolution& sol, const std::vector<std::string>& header = {});

}  // namespace hovi

#endif  // HOVI_OPTIMAL_CONTROL_HPP
