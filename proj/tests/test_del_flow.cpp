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

#include <cmath>
#include <random>

#include <Eigen/LU>

#include "doctest.h"
#include "hovi/del_flow.hpp"
#include "hovi/errors.hpp"
#include "hovi/models.hpp"
#include "hovi/regularized_bvp.hpp"

using namespace hovi;

namespace {

Jet pv(double q, double v) { return Jet(Eigen::VectorXd::Constant(1, q), {Eigen::VectorXd::Constant(1, v)}); }

// q(t) = 0.3 - 0.5 t + 1.2 t^2 - 0.7 t^3
Jet cubic(double t) { return pv(0.3 - 0.5 * t + 1.2 * t * t - 0.7 * t * t * t, -0.5 + 2.4 * t - 2.1 * t * t); }

}  // namespace

TEST_CASE("DEL residual") {
  const double h = 0.1;
  const auto ta = taylor_average(models::spline(1));
  CHECK(del_residual(ta, pv(0, 1), pv(0.1, 1), pv(0.2, 1), h).isZero(1e-12));
  const auto ex = spline_exact(1);
  CHECK(del_residual(ex, cubic(0.0), cubic(h), cubic(2 * h), h).lpNorm<Eigen::Infinity>() <= 1e-12 * 1e3);
  CHECK(del_residual(ex, pv(0.1, 0.2), pv(-0.3, 0.5), pv(0.9, -1.0), h).lpNorm<Eigen::Infinity>() > 1.0);
}

TEST_CASE("one step of the discrete flow") {
  const double h = 0.1;
  const Jet t = step(taylor_average(models::spline(1)), pv(0, 0), pv(0.1, 1), h);
  CHECK(t.q()(0) == doctest::Approx(0.2));
  CHECK(std::abs(t.deriv(1)(0)) <= 1e-12);

  const Jet e = step(spline_exact(1), pv(0, 1), pv(0.1, 1), h);
  CHECK(e.q()(0) == doctest::Approx(0.2));
  CHECK(e.deriv(1)(0) == doctest::Approx(1.0));

  for (const auto& ld : {taylor_average(models::spline(1)), spline_exact(1), midpoint_difference(models::spline(1)),
                         trapezoid_velocity(models::spline(1))}) {
    const Jet rest = step(ld, pv(0, 0), pv(0, 0), h);
    CHECK(rest.stacked().isZero(1e-14));
  }

  // contract: the returned state satisfies the DEL equations
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto weighted = taylor_average(make_lagrangian("w", 2, models::WeightedSpline{}));
  for (int i = 0; i < 20; ++i) {
    const Jet a(Eigen::Vector2d(u(rng), u(rng)), {Eigen::VectorXd(Eigen::Vector2d(u(rng), u(rng)))});
    const Jet b(a.q() + 0.1 * a.deriv(1), {Eigen::VectorXd(a.deriv(1) + 0.05 * Eigen::Vector2d(u(rng), u(rng)))});
    const Jet c = step(weighted, a, b, 0.1);
    const double scale = weighted.gradient(pack(Pair(a, b, 0.1)), 0.1).lpNorm<Eigen::Infinity>();
    CHECK(del_residual(weighted, a, b, c, 0.1).lpNorm<Eigen::Infinity>() <= 1e-12 * std::max(1.0, scale) * 100.0);
  }
}

TEST_CASE("regularity matrix of the exact spline Lagrangian") {
  const double h = 0.5;
  const Eigen::MatrixXd w = Wd_matrix(spline_exact(1), unpack(Eigen::VectorXd(Eigen::VectorXd::Zero(4)), 2, 1, h));
  CHECK(w(0, 0) == doctest::Approx(-12.0 / (h * h * h)));
  CHECK(w(0, 1) == doctest::Approx(6.0 / (h * h)));
  CHECK(w(1, 0) == doctest::Approx(-6.0 / (h * h)));
  CHECK(w(1, 1) == doctest::Approx(2.0 / h));
  for (double hh : {1.0, 0.5, 0.1, 0.01}) {
    const Eigen::MatrixXd m = Wd_matrix(spline_exact(2), unpack(Eigen::VectorXd(Eigen::VectorXd::Zero(8)), 2, 2, hh));
    CHECK(std::abs(m.determinant()) * std::pow(hh, 8) == doctest::Approx(144.0));
  }
}

TEST_CASE("trajectory runner") {
  const double h = 0.01;
  const Gridd grid(0.0, h, 100);
  const Path p = run(spline_exact(1), cubic(0.0), cubic(h), grid);
  REQUIRE(p.states.size() == 101);
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) worst = std::max(worst, (p.states[i].stacked() - cubic(grid.node(i)).stacked()).lpNorm<Eigen::Infinity>());
  CHECK(worst <= 1e-10);

  const Path line = run(taylor_average(models::spline(1)), pv(0, 1), pv(h, 1), grid);
  CHECK(line.states.back().q()(0) == doctest::Approx(1.0));
  CHECK(line.states.back().deriv(1)(0) == doctest::Approx(1.0));

  for (const auto& ld : {spline_exact(1), taylor_average(models::spline(1))}) {
    // seeds from the unit-scale cubic 0.3 s - 0.2 s^2 + 0.1 s^3, s = t / 10
    auto seed = [](double t) {
      const double s = t / 10.0;
      return pv(0.3 * s - 0.2 * s * s + 0.1 * s * s * s, (0.3 - 0.4 * s + 0.3 * s * s) / 10.0);
    };
    const Path phi = run(ld, seed(0.0), seed(0.01), Gridd(0.0, 0.01, 1000), spline_phi);
    const double first = phi.diagnostics.front().invariant(0);
    double drift = 0.0;
    for (const auto& d : phi.diagnostics) drift = std::max(drift, std::abs(d.invariant(0) - first));
    CHECK(drift <= 1e-12);
  }
}

TEST_CASE("translation direction momentum") {
  const double h = 0.1;
  const auto ld = spline_exact(1);
  const Path p = run(ld, pv(0.0, 0.3), pv(0.05, 0.6), Gridd(0.0, h, 20));
  for (std::size_t k = 0; k + 2 < p.states.size(); ++k) {
    const auto d_left = block_partials(ld, Pair(p.states[k], p.states[k + 1], h));
    const auto d_right = block_partials(ld, Pair(p.states[k + 1], p.states[k + 2], h));
    CHECK(std::abs(d_left[2](0) + d_right[0](0)) <= 1e-9);
  }
}

TEST_CASE("step failures report the step index") {
  const DiscreteLagrangian flat("flat", 2, 1, [](const Eigen::VectorXd& x, double) { return x(0) * x(1); },
                                [](const Eigen::VectorXd& x, double) {
                                  return Eigen::VectorXd((Eigen::VectorXd(4) << x(1), x(0), 0.0, 0.0).finished());
                                },
                                [](const Eigen::VectorXd&, double) {
                                  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
                                  m(0, 1) = m(1, 0) = 1.0;
                                  return m;
                                });
  try {
    (void)run(flat, pv(1, 1), pv(2, 1), Gridd(0.0, 0.1, 5));
    FAIL("expected a solver error");
  } catch (const SolverError& e) {
    CHECK(e.kind() == SolverFailure::kSingularWd);
    CHECK(e.step_index() == 2);
  }
}

TEST_CASE("seeding from an initial jet") {
  const Jet j3(Eigen::VectorXd::Constant(1, 0.3),
               {Eigen::VectorXd::Constant(1, -0.5), Eigen::VectorXd::Constant(1, 2.4), Eigen::VectorXd::Constant(1, -4.2)});
  const Jet x1 = seed_second_point(models::spline(1), j3, 0.1);
  CHECK((x1.stacked() - cubic(0.1).stacked()).lpNorm<Eigen::Infinity>() <= 1e-13);
}

TEST_CASE("whole-path boundary value solve") {
  const Gridd grid = uniform_grid(0.0, 1.0, 20);
  const PathSolution sol = solve_path_bvp(spline_exact(1), pv(0, 0), pv(1, 0), grid);
  for (int i = 0; i <= 20; ++i) {
    const double t = grid.node(i);
    CHECK(std::abs(sol.path.states[i].q()(0) - (3 * t * t - 2 * t * t * t)) <= 1e-10);
  }
  CHECK(sol.action == doctest::Approx(6.0));

  // the taylor scheme converges to the cubic at second order
  double prev_err = 0.0;
  for (int n : {10, 20, 40}) {
    const Gridd g = uniform_grid(0.0, 1.0, n);
    const PathSolution s = solve_path_bvp(taylor_average(models::spline(1)), pv(0, 0), pv(1, 0), g);
    double err = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double t = g.node(i);
      err = std::max(err, std::abs(s.path.states[i].q()(0) - (3 * t * t - 2 * t * t * t)));
    }
    if (prev_err > 0.0) CHECK(prev_err / err == doctest::Approx(4.0).epsilon(0.1));
    prev_err = err;
  }

  const PathSolution rest = solve_path_bvp(taylor_average(models::spline(1)), pv(0.5, 0), pv(0.5, 0), grid);
  for (const auto& s : rest.path.states) CHECK(s.q()(0) == doctest::Approx(0.5));
  CHECK(std::abs(rest.action) <= 1e-20);

  // the path agrees with the step recursion seeded from its first two states
  const Path rec = run(spline_exact(1), sol.path.states[0], sol.path.states[1], grid);
  for (int i = 0; i <= 20; ++i) CHECK((rec.states[i].stacked() - sol.path.states[i].stacked()).lpNorm<Eigen::Infinity>() <= 1e-9);
}
