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

#include "hovi/legendre_d.hpp"

#include <stdexcept>

#include "hovi/del_flow.hpp"
#include "hovi/errors.hpp"
#include "hovi/finite_difference.hpp"
#include "hovi/newton.hpp"

namespace hovi {

namespace {

void check_pair(const DiscreteLagrangian& ld, const Pair& s, const char* where) {
  if (ld.k() != 2 || s.k() != 2 || s.dim() != ld.dim()) {
    throw std::invalid_argument(std::string(where) + ": needs a TQ x TQ state of the scheme's dimension");
  }
}

void check_momenta(const DiscreteLagrangian& ld, const MomentaState& m, const char* where) {
  const Eigen::Index n = ld.dim();
  if (ld.k() != 2 || m.q.size() != n || m.v.size() != n || m.p.size() != n || m.ptilde.size() != n) {
    throw std::invalid_argument(std::string(where) + ": momenta dimension mismatch");
  }
}

Jet jet_of(const Eigen::VectorXd& q, const Eigen::VectorXd& v) { return Jet(q, {v}); }

// Solves for the free point of a pair so that the selected half of the
// gradient equals `target`. `left_fixed` means the known point is on the left.
Pair invert_half(const DiscreteLagrangian& ld, const Jet& known, const Eigen::VectorXd& target, double h,
                 bool left_fixed, const Eigen::VectorXd& y0, const InverseOptions& options) {
  const Eigen::Index m = ld.point_size();
  const Eigen::VectorXd kv = known.stacked();
  const double sign = left_fixed ? -1.0 : 1.0;
  auto full = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd x(2 * m);
    if (left_fixed) {
      x << kv, y;
    } else {
      x << y, kv;
    }
    return x;
  };
  auto residual = [&](const Eigen::VectorXd& y) {
    const Eigen::VectorXd g = ld.gradient(full(y), h);
    return Eigen::VectorXd(sign * (left_fixed ? g.head(m) : g.tail(m)) - target);
  };
  auto jacobian = [&](const Eigen::VectorXd& y) {
    const Eigen::MatrixXd hess = ld.hessian(full(y), h);
    return Eigen::MatrixXd(sign * (left_fixed ? hess.topRightCorner(m, m) : hess.bottomLeftCorner(m, m)));
  };
  NewtonOptions nopts;
  nopts.tolerance = options.tolerance;
  nopts.max_iterations = options.max_iterations;
  const Eigen::VectorXd x0 = full(y0);
  const Eigen::MatrixXd hess = ld.hessian(x0, h).cwiseAbs();
  const Eigen::MatrixXd rows = left_fixed ? Eigen::MatrixXd(hess.topRows(m)) : Eigen::MatrixXd(hess.bottomRows(m));
  nopts.scale = std::max({1.0, target.lpNorm<Eigen::Infinity>(), (rows * x0.cwiseAbs()).maxCoeff()});
  const NewtonResult res = newton_solve(residual, jacobian, y0, nopts, SolverFailure::kSingularWd);
  const Jet other = Jet::from_stacked(res.x, 1, ld.dim());
  return left_fixed ? Pair(known, other, h) : Pair(other, known, h);
}

}  // namespace

MomentaState fplus(const DiscreteLagrangian& ld, const Pair& s) {
  check_pair(ld, s, "fplus");
  const auto d = block_partials(ld, s);
  return {s.right().q(), s.right().deriv(1), d[2], d[3]};
}

MomentaState fminus(const DiscreteLagrangian& ld, const Pair& s) {
  check_pair(ld, s, "fminus");
  const auto d = block_partials(ld, s);
  return {s.left().q(), s.left().deriv(1), -d[0], -d[1]};
}

Pair fminus_inverse(const DiscreteLagrangian& ld, const MomentaState& m, double h, const std::optional<Jet>& guess,
                    const InverseOptions& options) {
  check_momenta(ld, m, "fminus_inverse");
  Eigen::VectorXd target(2 * ld.dim());
  target << m.p, m.ptilde;
  const Jet start = guess ? *guess : jet_of(m.q + h * m.v, m.v);
  return invert_half(ld, jet_of(m.q, m.v), target, h, true, start.stacked(), options);
}

Pair fplus_inverse(const DiscreteLagrangian& ld, const MomentaState& m, double h, const std::optional<Jet>& guess,
                   const InverseOptions& options) {
  check_momenta(ld, m, "fplus_inverse");
  Eigen::VectorXd target(2 * ld.dim());
  target << m.p, m.ptilde;
  const Jet start = guess ? *guess : jet_of(m.q - h * m.v, m.v);
  return invert_half(ld, jet_of(m.q, m.v), target, h, false, start.stacked(), options);
}

MomentaState hamiltonian_step(const DiscreteLagrangian& ld, const MomentaState& m, double h,
                              const InverseOptions& options) {
  return fplus(ld, fminus_inverse(ld, m, h, std::nullopt, options));
}

MomentaState hamiltonian_step_minus(const DiscreteLagrangian& ld, const MomentaState& m, double h,
                                    const InverseOptions& options) {
  const Pair s = fminus_inverse(ld, m, h, std::nullopt, options);
  StepOptions sopts;
  sopts.tolerance = options.tolerance;
  const Jet next = step(ld, s.left(), s.right(), h, std::nullopt, sopts);
  return fminus(ld, Pair(s.right(), next, h));
}

MomentaState hamiltonian_step_plus(const DiscreteLagrangian& ld, const MomentaState& m, double h,
                                   const InverseOptions& options) {
  const Pair s = fplus_inverse(ld, m, h, std::nullopt, options);
  StepOptions sopts;
  sopts.tolerance = options.tolerance;
  const Jet next = step(ld, s.left(), s.right(), h, std::nullopt, sopts);
  return fplus(ld, Pair(s.right(), next, h));
}

MomentaState drifted_hamiltonian_step(const DiscreteLagrangian& ld, const MomentaState& m, double h, double drift) {
  MomentaState out = hamiltonian_step(ld, m, h);
  out.q += drift * m.q;
  return out;
}

Eigen::MatrixXd canonical_omega(int n) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  omega.topRightCorner(2 * n, 2 * n).setIdentity();
  omega.bottomLeftCorner(2 * n, 2 * n) = -Eigen::MatrixXd::Identity(2 * n, 2 * n);
  return omega;
}

double symplectic_defect(const StackedMap& map, const Eigen::VectorXd& x, double step_scale) {
  if (x.size() % 4 != 0) throw std::invalid_argument("symplectic_defect: state length must be 4n");
  const Eigen::MatrixXd jac = fd::jacobian(map, x, step_scale);
  const Eigen::MatrixXd omega = canonical_omega(static_cast<int>(x.size() / 4));
  return (jac.transpose() * omega * jac - omega).cwiseAbs().maxCoeff();
}

double symplectic_defect(const DiscreteLagrangian& ld, const MomentaState& m, double h, double step_scale) {
  const int n = ld.dim();
  auto map = [&](const Eigen::VectorXd& x) {
    return hamiltonian_step(ld, MomentaState::from_stacked(x, n), h).stacked();
  };
  return symplectic_defect(map, m.stacked(), step_scale);
}

Theorem41Result theorem41_check(const LagrangianModel& lagrangian, const Jet& q1jet, const Jet& q2jet, double h,
                                const DiscreteLagrangian* exact, const ShootingOptions& shooting) {
  Theorem41Result out;
  out.bvp = shooting_bvp(lagrangian, q1jet, q2jet, h, shooting);
  const MomentaState left = legendre(lagrangian, out.bvp.initial);
  const MomentaState right = legendre(lagrangian, out.bvp.final);

  const Pair s(q1jet, q2jet, h);
  MomentaState dminus;
  MomentaState dplus;
  if (exact) {
    dminus = fminus(*exact, s);
    dplus = fplus(*exact, s);
  } else {
    ShootingOptions pinned = shooting;
    pinned.substeps = out.bvp.substeps;
    pinned.fixed_substeps = true;
    pinned.guess.resize(2 * lagrangian.dim());
    pinned.guess << out.bvp.initial.deriv(2), out.bvp.initial.deriv(3);
    const DiscreteLagrangian ld = exact_discrete_lagrangian(lagrangian, ExactMethod::kShooting, {}, pinned);
    // one gradient serves both transforms
    const auto d = block_partials(ld, s);
    dminus = {q1jet.q(), q1jet.deriv(1), -d[0], -d[1]};
    dplus = {q2jet.q(), q2jet.deriv(1), d[2], d[3]};
  }
  out.left_err = (dminus.stacked() - left.stacked()).lpNorm<Eigen::Infinity>();
  out.right_err = (dplus.stacked() - right.stacked()).lpNorm<Eigen::Infinity>();
  return out;
}

}  // namespace hovi
