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

#include "doctest.h"
#include "hovi/errors.hpp"
#include "hovi/finite_difference.hpp"
#include "hovi/lagrangian.hpp"
#include "hovi/models.hpp"

using namespace hovi;

namespace {

Jet jet1(std::initializer_list<double> c) {
  std::vector<Eigen::VectorXd> d;
  auto it = c.begin();
  Eigen::VectorXd q = Eigen::VectorXd::Constant(1, *it++);
  for (; it != c.end(); ++it) d.emplace_back(Eigen::VectorXd::Constant(1, *it));
  return Jet(q, d);
}

Eigen::VectorXd random_vec(std::mt19937_64& rng, int size) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i) v(i) = u(rng);
  return v;
}

}  // namespace

TEST_CASE("el residual for splines") {
  const auto spline = models::spline(1);
  CHECK(el_residual(spline, jet1({0, 0, 0, 0, 0}))(0) == 0.0);
  CHECK(el_residual(spline, jet1({0.3, -1, 2, 5, 7.5}))(0) == doctest::Approx(7.5));
  CHECK(el_residual(models::spline_potential(1), jet1({1, 0, 0, 0, 0}))(0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(el_residual(spline, jet1({0, 0, 0})), std::invalid_argument);
}

TEST_CASE("fourth order vector field") {
  CHECK(fourth_order_rhs(models::spline(1), jet1({1, 2, 3, 4}))(0) == 0.0);
  CHECK(fourth_order_rhs(models::spline_potential(1), jet1({0.7, 0, 0, 0}))(0) == doctest::Approx(-0.7));

  std::mt19937_64 rng(3);
  const auto weighted = make_lagrangian("weighted", 2, models::WeightedSpline{});
  for (int trial = 0; trial < 20; ++trial) {
    const Jet base = Jet::from_stacked(random_vec(rng, 8), 3, 2);
    const Eigen::VectorXd q4 = fourth_order_rhs(weighted, base);
    CHECK(el_residual(weighted, base.extended(q4)).lpNorm<Eigen::Infinity>() <= 1e-10);
  }
  const auto degenerate = make_lagrangian("av", 1, models::AccelerationDotVelocity{});
  CHECK_THROWS_AS(fourth_order_rhs(degenerate, jet1({0, 1, 0, 0})), SolverError);
}

TEST_CASE("continuous legendre transform") {
  const auto p = legendre(models::spline(1), jet1({1, 2, 3, 4}));
  CHECK(p.q(0) == 1.0);
  CHECK(p.v(0) == 2.0);
  CHECK(p.p(0) == doctest::Approx(-4.0));
  CHECK(p.ptilde(0) == doctest::Approx(3.0));
  const auto zero = legendre(models::spline(1), jet1({0, 0, 0, 0}));
  CHECK(zero.stacked().isZero(0.0));
  const auto shifted = legendre(make_lagrangian("lin", 1, models::SplineLinearVelocity{}), jet1({0, 1, 2, 3}));
  CHECK(shifted.p(0) == doctest::Approx(-2.0));
  CHECK(shifted.ptilde(0) == doctest::Approx(2.0));
}

TEST_CASE("hessian W and regularity") {
  const Jet z2 = Jet::zero(2, 2);
  const HessianW w = hessian_W(models::spline(2), z2);
  CHECK(w.is_regular);
  CHECK(w.matrix.isIdentity(1e-14));
  const HessianW g = hessian_W(make_lagrangian("w", 1, models::WeightedSpline{}), jet1({1, 0, 0}));
  CHECK(g.matrix(0, 0) == doctest::Approx(2.0));
  CHECK(g.is_regular);
  CHECK_FALSE(hessian_W(make_lagrangian("av", 1, models::AccelerationDotVelocity{}), jet1({0, 1, 1})).is_regular);
}

TEST_CASE("exact derivatives agree with finite differences") {
  std::mt19937_64 rng(11);
  const auto models_under_test = {make_lagrangian("weighted", 2, models::WeightedSpline{}),
                                  models::spline_potential(2, 3.0),
                                  make_lagrangian("lin", 2, models::SplineLinearVelocity{})};
  for (const auto& m : models_under_test) {
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::VectorXd x = random_vec(rng, 6);
      const Eigen::VectorXd g = m.gradient(x);
      const Eigen::VectorXd gfd = fd::gradient([&](const Eigen::VectorXd& y) { return m.value(y); }, x);
      CHECK((g - gfd).norm() <= 1e-5 * std::max(1.0, g.norm()));
      const Eigen::MatrixXd hess = m.hessian(x);
      const Eigen::MatrixXd hfd = fd::jacobian([&](const Eigen::VectorXd& y) { return m.gradient(y); }, x);
      CHECK((hess - hfd).norm() <= 1e-5 * std::max(1.0, hess.norm()));
      CHECK((hess - hess.transpose()).norm() == 0.0);
    }
  }
}

TEST_CASE("finite-difference backed model matches exact one") {
  const auto exact = make_lagrangian("weighted", 1, models::WeightedSpline{});
  const auto fdm = make_fd_lagrangian("weighted_fd", 1, [](const Eigen::VectorXd& x) {
    return 0.5 * (1.0 + x(0) * x(0)) * x(2) * x(2);
  });
  CHECK(fdm.finite_difference_backed());
  CHECK_FALSE(exact.finite_difference_backed());
  const Jet j = jet1({0.4, -0.3, 0.8, 0.2, 0.0});
  CHECK(std::abs(el_residual(exact, j)(0) - el_residual(fdm, j)(0)) <= 1e-4);
}

TEST_CASE("controlled forces") {
  const auto particle = make_mechanical("particle", 2, models::FreeParticle{});
  const Jet j = Jet::from_stacked((Eigen::VectorXd(6) << 1, 2, 3, 4, 5, 6).finished(), 2, 2);
  const Eigen::VectorXd u = controlled_forces(particle, j);
  CHECK(u(0) == doctest::Approx(5.0));
  CHECK(u(1) == doctest::Approx(6.0));

  // pendulum on a free trajectory instant: a = -(g/l) sin q
  const models::Pendulum pend{1.0, 2.0, 9.8};
  const auto pm = make_mechanical("pendulum", 1, pend);
  const double q = 0.3;
  const Jet free_jet = jet1({q, 0.5, -9.8 / 2.0 * std::sin(q)});
  CHECK(std::abs(controlled_forces(pm, free_jet)(0)) <= 1e-12);

  const Eigen::VectorXd qv = Eigen::VectorXd::Constant(1, q);
  const Eigen::VectorXd vv = Eigen::VectorXd::Constant(1, 0.5);
  const Eigen::VectorXd av = Eigen::VectorXd::Constant(1, 1.25);
  CHECK(controlled_forces_t<double>(pend, qv, vv, av)(0) ==
        doctest::Approx(controlled_forces(pm, jet1({q, 0.5, 1.25}))(0)));
}
