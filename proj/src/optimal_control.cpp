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

#include "hovi/optimal_control.hpp"

#include <sstream>
#include <stdexcept>

#include "hovi/format.hpp"

namespace hovi {

void TwoLinkParams::validate() const {
  if (!(m1 > 0 && m2 > 0 && l1 > 0 && l2 > 0 && J1 > 0 && J2 > 0 && g > 0)) {
    throw std::invalid_argument("TwoLinkParams: all parameters must be positive");
  }
}

Eigen::VectorXd two_link_forces(const TwoLinkParams& p, const Jet& jet) {
  if (jet.order() < 2 || jet.dim() != 2) throw std::invalid_argument("two_link_forces: needs an order-2 jet in R^2");
  return two_link_forces<double>(p, jet.q(), jet.deriv(1), jet.deriv(2));
}

MechanicalModel two_link_mechanical(const TwoLinkParams& p) {
  return make_mechanical("two_link", 2, TwoLinkMechanical{p});
}

double joint_limit_penalty(double theta2, double slope, double lo, double hi) {
  if (theta2 < lo) return slope * (lo - theta2);
  if (theta2 > hi) return slope * (theta2 - hi);
  return 0.0;
}

void OCProblem::validate() const {
  if (steps < 2) throw std::invalid_argument("OCProblem: need N >= 2");
  if (!(horizon > 0.0)) throw std::invalid_argument("OCProblem: horizon must be positive");
  const int n = lifted.dim();
  if (start.dim() != n || end.dim() != n || start.order() != 1 || end.order() != 1) {
    throw std::invalid_argument("OCProblem: boundary data must be (q, v) of dimension " + std::to_string(n));
  }
}

OCProblem two_link_problem(const TwoLinkOptions& o) {
  o.params.validate();
  const Jet start(o.start.head<2>(), {o.start.tail<2>()});
  const Jet end(o.end.head<2>(), {o.end.tail<2>()});
  const TwoLinkParams p = o.params;
  auto forces = [p](const Jet& jet) { return two_link_forces(p, jet); };
  if (o.penalty) {
    const ElbowPenalty pen{o.penalty_slope, 0.0, 170.0 * std::numbers::pi / 180.0, o.penalty_delta};
    LagrangianModel lifted =
        make_lagrangian("two_link_penalty", 2, TwoLinkLiftedCost<QuadraticControlCost, ElbowPenalty>{p, {}, pen});
    return OCProblem{"two_link_penalty", std::move(lifted), forces, start, end, o.horizon, o.steps};
  }
  LagrangianModel lifted = make_lagrangian("two_link", 2, TwoLinkLiftedCost<QuadraticControlCost>{p, {}, {}});
  return OCProblem{"two_link", std::move(lifted), forces, start, end, o.horizon, o.steps};
}

namespace {

struct UnitMass {
  template <typename S>
  S operator()(const VectorX<S>& /*q*/, const VectorX<S>& v) const {
    return 0.5 * v.dot(v);
  }
};

}  // namespace

OCProblem free_particle_problem(const Jet& start, const Jet& end, double horizon, int steps) {
  return make_ocp("free_particle", start.dim(), UnitMass{}, QuadraticControlCost{}, start, end, horizon, steps);
}

std::vector<Eigen::VectorXd> node_accelerations(const Path& path) {
  const auto& xs = path.states;
  const std::size_t m = xs.size();
  const double h = path.grid.h();
  std::vector<Eigen::VectorXd> acc(m);
  if (m < 3) {
    for (std::size_t i = 0; i < m; ++i) acc[i] = (xs.back().deriv(1) - xs.front().deriv(1)) / (h * double(m - 1));
    return acc;
  }
  for (std::size_t i = 1; i + 1 < m; ++i) acc[i] = (xs[i + 1].deriv(1) - xs[i - 1].deriv(1)) / (2.0 * h);
  acc[0] = (-3.0 * xs[0].deriv(1) + 4.0 * xs[1].deriv(1) - xs[2].deriv(1)) / (2.0 * h);
  acc[m - 1] = (3.0 * xs[m - 1].deriv(1) - 4.0 * xs[m - 2].deriv(1) + xs[m - 3].deriv(1)) / (2.0 * h);
  return acc;
}

OCSolution solve_ocp(const OCProblem& problem, const std::string& scheme, const PathOptions& options,
                     const std::vector<Jet>& guess) {
  problem.validate();
  const DiscreteLagrangian ld = make_scheme(scheme, problem.lifted);
  const Gridd grid = uniform_grid(0.0, problem.horizon, problem.steps);
  OCSolution out{solve_path_bvp(ld, problem.start, problem.end, grid, guess, options), 0.0, {}, {}};
  out.cost = out.solution.action;
  out.accelerations = node_accelerations(out.solution.path);
  if (problem.forces) {
    for (std::size_t i = 0; i < out.accelerations.size(); ++i) {
      const Jet& x = out.solution.path.states[i];
      out.controls.push_back(problem.forces(Jet(x.q(), {x.deriv(1), out.accelerations[i]})));
    }
  }
  return out;
}

OCSolution solve_two_link(const TwoLinkOptions& options, const std::string& scheme, const PathOptions& path_options) {
  if (!options.penalty) return solve_ocp(two_link_problem(options), scheme, path_options);
  if (!(options.penalty_delta > 0.0)) throw std::invalid_argument("solve_two_link: penalty_delta must be positive");
  std::vector<double> widths;
  for (double d = 1e-2; d > options.penalty_delta * (1.0 + 1e-9); d /= 10.0) widths.push_back(d);
  widths.push_back(options.penalty_delta);
  OCSolution sol;
  std::vector<Jet> guess;
  int iterations = 0;
  for (double d : widths) {
    TwoLinkOptions o = options;
    o.penalty_delta = d;
    sol = solve_ocp(two_link_problem(o), scheme, path_options, guess);
    guess = sol.solution.path.states;
    iterations += sol.solution.iterations;
  }
  sol.solution.iterations = iterations;
  return sol;
}

std::string ocp_csv(const OCSolution& sol, const std::vector<std::string>& header) {
  const Path& path = sol.solution.path;
  const int n = path.states.empty() ? 0 : path.states.front().dim();
  std::ostringstream out;
  if (!header.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  } else {
    out << 't';
    for (int i = 0; i < n; ++i) out << ",q" << i + 1;
    for (int i = 0; i < n; ++i) out << ",v" << i + 1;
    if (!sol.controls.empty()) {
      for (int i = 0; i < n; ++i) out << ",u" << i + 1;
    }
  }
  out << '\n';
  for (std::size_t k = 0; k < path.states.size(); ++k) {
    out << format_double(path.grid.node(static_cast<int>(k)));
    const Jet& x = path.states[k];
    for (int i = 0; i < n; ++i) out << ',' << format_double(x.q()(i));
    for (int i = 0; i < n; ++i) out << ',' << format_double(x.deriv(1)(i));
    if (!sol.controls.empty()) {
      for (int i = 0; i < n; ++i) out << ',' << format_double(sol.controls[k](i));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace hovi
