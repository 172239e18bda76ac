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

#include "hovi/del_flow.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SparseCore>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "hovi/errors.hpp"
#include "hovi/newton.hpp"
#include "hovi/regularized_bvp.hpp"

namespace hovi {

namespace {

void check_jet(const DiscreteLagrangian& ld, const Jet& j, const char* where) {
  if (j.order() != ld.k() - 1 || j.dim() != ld.dim()) {
    throw std::invalid_argument(std::string(where) + ": state shape does not match the discrete Lagrangian");
  }
}

Eigen::VectorXd pair_vector(const Jet& a, const Jet& b) {
  Eigen::VectorXd x(a.stacked().size() + b.stacked().size());
  x << a.stacked(), b.stacked();
  return x;
}

}  // namespace

Eigen::VectorXd del_residual(const DiscreteLagrangian& ld, const Jet& prev, const Jet& cur, const Jet& next, double h) {
  check_jet(ld, prev, "del_residual");
  check_jet(ld, cur, "del_residual");
  check_jet(ld, next, "del_residual");
  const Eigen::Index m = ld.point_size();
  return ld.gradient(pair_vector(prev, cur), h).tail(m) + ld.gradient(pair_vector(cur, next), h).head(m);
}

Eigen::MatrixXd Wd_matrix(const DiscreteLagrangian& ld, const Pair& s) {
  const Eigen::Index m = ld.point_size();
  return ld.hessian(pack(s), s.h()).topRightCorner(m, m);
}

void StepWorkspace::clear() {
  iterate.resize(0);
  residual.resize(0);
  jacobian.resize(0, 0);
  iterations = 0;
  residual_norm = 0.0;
}

Jet step(const DiscreteLagrangian& ld, const Jet& prev, const Jet& cur, double h, const std::optional<Jet>& guess,
         const StepOptions& options, StepWorkspace* workspace) {
  check_jet(ld, prev, "step");
  check_jet(ld, cur, "step");
  const Eigen::Index m = ld.point_size();
  const Eigen::VectorXd before = pair_vector(prev, cur);
  const Eigen::VectorXd known = ld.gradient(before, h).tail(m);
  const Eigen::VectorXd cur_vec = cur.stacked();
  Eigen::VectorXd y0 = guess ? guess->stacked() : Eigen::VectorXd(2.0 * cur_vec - prev.stacked());

  auto residual = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd x(2 * m);
    x << cur_vec, y;
    return Eigen::VectorXd(known + ld.gradient(x, h).head(m));
  };
  auto jacobian = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd x(2 * m);
    x << cur_vec, y;
    Eigen::MatrixXd jac = ld.hessian(x, h).topRightCorner(m, m);
    if (workspace) workspace->jacobian = jac;
    return jac;
  };

  NewtonOptions nopts;
  nopts.tolerance = options.tolerance;
  nopts.max_iterations = options.max_iterations;
  // The residual is a sum of terms that cancel; its roundoff floor follows
  // the size of the terms, |H| |x|, not of the sum.
  const Eigen::MatrixXd hess = ld.hessian(before, h).bottomRows(m).cwiseAbs();
  nopts.scale = std::max({1.0, known.lpNorm<Eigen::Infinity>(), (hess * before.cwiseAbs()).maxCoeff()});
  const NewtonResult res = newton_solve(residual, jacobian, std::move(y0), nopts, SolverFailure::kSingularWd);
  if (workspace) {
    workspace->iterate = res.x;
    workspace->residual = residual(res.x);
    workspace->iterations = res.iterations;
    workspace->residual_norm = res.residual_norm;
  }
  return Jet::from_stacked(res.x, ld.k() - 1, ld.dim());
}

Path run(const DiscreteLagrangian& ld, const Jet& x0, const Jet& x1, const Gridd& grid, const InvariantFn& invariant,
         const StepOptions& options) {
  Path path{grid, {x0, x1}, {}};
  path.states.reserve(static_cast<std::size_t>(grid.nodes()));
  const double h = grid.h();
  StepWorkspace ws;
  for (int k = 2; k <= grid.steps(); ++k) {
    const Jet& prev = path.states[k - 2];
    const Jet& cur = path.states[k - 1];
    Jet next;
    try {
      next = step(ld, prev, cur, h, std::nullopt, options, &ws);
    } catch (const SolverError& e) {
      throw e.at_step(k);
    }
    StepDiagnostics d;
    d.del_residual = ws.residual_norm;
    d.newton_iterations = ws.iterations;
    if (invariant) d.invariant = invariant(Pair(cur, next, h));
    path.diagnostics.push_back(std::move(d));
    path.states.push_back(std::move(next));
  }
  return path;
}

Jet seed_second_point(const LagrangianModel& lagrangian, const Jet& initial_jet3, double h, int substeps) {
  return integrate_jet(lagrangian, initial_jet3, h, substeps).jet.truncated(1);
}

Eigen::VectorXd spline_phi(const Pair& s) {
  if (s.k() != 2) throw std::invalid_argument("spline_phi: needs (q, v) states");
  return (s.right().q() - s.left().q()) / s.h() - 0.5 * (s.left().deriv(1) + s.right().deriv(1));
}

std::vector<Jet> hermite_guess(const Jet& xa, const Jet& xb, const Gridd& grid) {
  if (xa.order() != 1 || xb.order() != 1 || xa.dim() != xb.dim()) {
    throw std::invalid_argument("hermite_guess: boundary data must be (q, v) pairs of equal dimension");
  }
  const double span = grid.h() * grid.steps();
  std::vector<Jet> out;
  for (int i = 0; i <= grid.steps(); ++i) {
    const double s = static_cast<double>(i) / grid.steps();
    const double h00 = 2 * s * s * s - 3 * s * s + 1;
    const double h10 = s * s * s - 2 * s * s + s;
    const double h01 = -2 * s * s * s + 3 * s * s;
    const double h11 = s * s * s - s * s;
    const double d00 = 6 * s * s - 6 * s;
    const double d10 = 3 * s * s - 4 * s + 1;
    const double d01 = -6 * s * s + 6 * s;
    const double d11 = 3 * s * s - 2 * s;
    Eigen::VectorXd q = h00 * xa.q() + h10 * span * xa.deriv(1) + h01 * xb.q() + h11 * span * xb.deriv(1);
    Eigen::VectorXd v = (d00 * xa.q() + d01 * xb.q()) / span + d10 * xa.deriv(1) + d11 * xb.deriv(1);
    out.emplace_back(q, std::vector<Eigen::VectorXd>{v});
  }
  out.front() = xa;
  out.back() = xb;
  return out;
}

namespace {

struct PathSystem {
  const DiscreteLagrangian& ld;
  Jet xa;
  Jet xb;
  int steps;
  double h;
  Eigen::Index m;

  [[nodiscard]] Eigen::VectorXd state(const Eigen::VectorXd& y, int i) const {
    if (i == 0) return xa.stacked();
    if (i == steps) return xb.stacked();
    return y.segment(static_cast<Eigen::Index>(i - 1) * m, m);
  }

  [[nodiscard]] Eigen::VectorXd pair(const Eigen::VectorXd& y, int i) const {
    Eigen::VectorXd x(2 * m);
    x << state(y, i), state(y, i + 1);
    return x;
  }

  [[nodiscard]] Eigen::VectorXd residual(const Eigen::VectorXd& y) const {
    Eigen::VectorXd r(y.size());
    Eigen::VectorXd right = ld.gradient(pair(y, 0), h).tail(m);
    for (int i = 1; i < steps; ++i) {
      const Eigen::VectorXd g = ld.gradient(pair(y, i), h);
      r.segment(static_cast<Eigen::Index>(i - 1) * m, m) = right + g.head(m);
      right = g.tail(m);
    }
    return r;
  }

  [[nodiscard]] double action(const Eigen::VectorXd& y) const {
    double total = 0.0;
    for (int i = 0; i < steps; ++i) total += ld.value(pair(y, i), h);
    return total;
  }

  [[nodiscard]] Eigen::SparseMatrix<double> jacobian(const Eigen::VectorXd& y) const {
    std::vector<Eigen::Triplet<double>> trips;
    const Eigen::Index size = y.size();
    auto add = [&](Eigen::Index row0, Eigen::Index col0, const Eigen::MatrixXd& block) {
      for (Eigen::Index c = 0; c < block.cols(); ++c) {
        for (Eigen::Index r = 0; r < block.rows(); ++r) {
          if (block(r, c) != 0.0) trips.emplace_back(row0 + r, col0 + c, block(r, c));
        }
      }
    };
    // step i couples states i and i+1 and feeds the equations at i and i+1
    for (int i = 0; i < steps; ++i) {
      const Eigen::MatrixXd hess = ld.hessian(pair(y, i), h);
      const Eigen::Index eq_left = static_cast<Eigen::Index>(i - 1) * m;   // equation at state i
      const Eigen::Index eq_right = static_cast<Eigen::Index>(i) * m;      // equation at state i+1
      const bool left_free = i >= 1;
      const bool right_free = i + 1 <= steps - 1;
      if (left_free) {
        add(eq_left, eq_left, hess.topLeftCorner(m, m));
        if (right_free) add(eq_left, eq_right, hess.topRightCorner(m, m));
      }
      if (right_free) {
        add(eq_right, eq_right, hess.bottomRightCorner(m, m));
        if (left_free) add(eq_right, eq_left, hess.bottomLeftCorner(m, m));
      }
    }
    Eigen::SparseMatrix<double> jac(size, size);
    jac.setFromTriplets(trips.begin(), trips.end());
    return jac;
  }
};

}  // namespace

PathSolution solve_path_bvp(const DiscreteLagrangian& ld, const Jet& xa, const Jet& xb, const Gridd& grid,
                            const std::vector<Jet>& guess, const PathOptions& options) {
  check_jet(ld, xa, "solve_path_bvp");
  check_jet(ld, xb, "solve_path_bvp");
  if (grid.steps() < 2) throw std::invalid_argument("solve_path_bvp: need at least two steps");
  const std::vector<Jet> start = guess.empty() ? hermite_guess(xa, xb, grid) : guess;
  if (static_cast<int>(start.size()) != grid.nodes()) throw std::invalid_argument("solve_path_bvp: guess length");

  const PathSystem sys{ld, xa, xb, grid.steps(), grid.h(), ld.point_size()};
  const Eigen::Index m = sys.m;
  Eigen::VectorXd y((grid.steps() - 1) * m);
  for (int i = 1; i < grid.steps(); ++i) y.segment(static_cast<Eigen::Index>(i - 1) * m, m) = start[i].stacked();

  Eigen::VectorXd r = sys.residual(y);
  double norm = r.lpNorm<Eigen::Infinity>();
  double mu_state = 0.0;
  int it = 0;
  for (; it < options.max_iterations && norm > options.tolerance; ++it) {
    const Eigen::SparseMatrix<double> jac = sys.jacobian(y);
    bool accepted = false;
    if (options.minimize_action) {
      // The residual is the gradient of the summed action and jac its
      // Hessian: Levenberg-damped Newton on the action, with the shift kept
      // across iterations.
      const double s0 = sys.action(y);
      const double floor = 1e-12 * std::max(1.0, jac.diagonal().cwiseAbs().maxCoeff());
      Eigen::SparseMatrix<double> eye(jac.rows(), jac.cols());
      eye.setIdentity();
      double mu = mu_state;
      for (int tries = 0; tries < 80 && !accepted; ++tries) {
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
        ldlt.compute(Eigen::SparseMatrix<double>(jac + mu * eye));
        if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().array() > 0.0).all()) {
          mu = std::max(4.0 * mu, floor);
          continue;
        }
        const Eigen::VectorXd step = ldlt.solve(-r);
        const Eigen::VectorXd trial = y + step;
        const double st = sys.action(trial);
        bool ok = std::isfinite(st) && st <= s0 + 1e-4 * r.dot(step);
        Eigen::VectorXd rt;
        if (!ok && mu == 0.0) {
          // near convergence the action change drowns in roundoff
          rt = sys.residual(trial);
          ok = rt.lpNorm<Eigen::Infinity>() < norm;
        }
        if (!ok) {
          mu = std::max(4.0 * mu, floor);
          continue;
        }
        y = trial;
        r = rt.size() ? rt : sys.residual(y);
        norm = r.lpNorm<Eigen::Infinity>();
        mu_state = mu / 8.0 < floor ? 0.0 : mu / 8.0;
        accepted = true;
      }
    }
    if (!accepted) {
      Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
      lu.compute(jac);
      if (lu.info() != Eigen::Success) {
        throw SolverError(SolverFailure::kSingularKKT, "path Jacobian factorization failed: " + lu.lastErrorMessage(),
                          norm, it);
      }
      const Eigen::VectorXd dy = lu.solve(-r);
      if (lu.info() != Eigen::Success || !dy.allFinite()) {
        throw SolverError(SolverFailure::kSingularKKT, "path Jacobian solve failed", norm, it);
      }
      double alpha = 1.0;
      for (int k = 0; k <= options.max_halvings; ++k, alpha *= 0.5) {
        const Eigen::VectorXd trial = y + alpha * dy;
        const Eigen::VectorXd rt = sys.residual(trial);
        const double tn = rt.lpNorm<Eigen::Infinity>();
        if (tn < norm) {
          y = trial;
          r = rt;
          norm = tn;
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) break;
  }
  if (!(norm <= options.tolerance)) {
    throw SolverError(SolverFailure::kNoConvergence, "path Newton did not reach the tolerance", norm, it);
  }

  PathSolution out{Path{grid, {}, {}}};
  for (int i = 0; i <= grid.steps(); ++i) out.path.states.push_back(Jet::from_stacked(sys.state(y, i), ld.k() - 1, ld.dim()));
  for (int i = 1; i < grid.steps(); ++i) {
    StepDiagnostics d;
    d.del_residual = r.segment(static_cast<Eigen::Index>(i - 1) * m, m).lpNorm<Eigen::Infinity>();
    d.newton_iterations = it;
    out.path.diagnostics.push_back(std::move(d));
  }
  for (int i = 0; i < grid.steps(); ++i) out.action += ld.value(sys.pair(y, i), grid.h());
  out.residual = norm;
  out.iterations = it;
  return out;
}

double max_del_residual(const DiscreteLagrangian& ld, const Path& path) {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < path.states.size(); ++i) {
    worst = std::max(worst, del_residual(ld, path.states[i - 1], path.states[i], path.states[i + 1], path.grid.h())
                                .lpNorm<Eigen::Infinity>());
  }
  return worst;
}

}  // namespace hovi
