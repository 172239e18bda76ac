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
#include "hovi/finite_difference.hpp"
#include "hovi/models.hpp"
#include "hovi/regularized_bvp.hpp"

using namespace hovi;

namespace {

Jet pv(double q, double v) { return Jet(Eigen::VectorXd::Constant(1, q), {Eigen::VectorXd::Constant(1, v)}); }

Jet pv2(double q0, double q1, double v0, double v1) {
  return Jet(Eigen::Vector2d(q0, q1), {Eigen::VectorXd(Eigen::Vector2d(v0, v1))});
}

// Second derivative of the Hermite cubic through (qa, va) -> (qb, vb) over [0, h], at t.
double hermite_acc(double qa, double va, double qb, double vb, double h, double t) {
  const double a0 = (6.0 * (qb - qa) - h * (4.0 * va + 2.0 * vb)) / (h * h);
  const double j0 = (-12.0 * (qb - qa) + 6.0 * h * (va + vb)) / (h * h * h);
  return a0 + j0 * t;
}

}  // namespace

TEST_CASE("gauss-legendre rule") {
  for (int m : {1, 2, 5, 12}) {
    const Quadrature q = gauss_legendre(m);
    CHECK(q.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
    for (int p = 0; p < 2 * m; ++p) {
      double acc = 0.0;
      for (int l = 0; l < m; ++l) acc += q.weights(l) * std::pow(q.nodes(l), p);
      CHECK(std::abs(acc - 1.0 / (p + 1)) <= 1e-14);
    }
  }
}

TEST_CASE("orthonormal basis and gamma") {
  const BasisPack b2 = basis_gamma(2);
  CHECK(b2.gamma(0, 0) == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))));
  CHECK(b2.gamma(1, 0) == doctest::Approx(0.5));
  CHECK(std::abs(b2.gamma(0, 1)) <= 1e-15);
  CHECK(b2.gamma(1, 1) == doctest::Approx(1.0));
  CHECK(b2.b(0, 0.25) == doctest::Approx(std::sqrt(3.0) * 0.5));
  CHECK(b2.b(1, 0.7) == doctest::Approx(1.0));

  const BasisPack b1 = basis_gamma(1);
  CHECK(b1.a(0, 0.3) == 1.0);
  CHECK(b1.b(0, 0.3) == doctest::Approx(1.0));
  CHECK(b1.gamma(0, 0) == doctest::Approx(1.0));

  for (int k : {3, 4}) {
    const BasisPack b = basis_gamma(k);
    const Quadrature q = gauss_legendre(k + 2);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        double acc = 0.0;
        for (int l = 0; l < q.nodes.size(); ++l) acc += q.weights(l) * b.b(i, q.nodes(l)) * b.b(j, q.nodes(l));
        CHECK(std::abs(acc - (i == j ? 1.0 : 0.0)) <= 1e-12);
      }
      for (double s : {0.0, 0.3, 0.8}) {
        double rebuilt = 0.0;
        for (int l = 0; l < k; ++l) rebuilt += b.gamma(l, i) * b.b(l, s);
        CHECK(std::abs(rebuilt - b.a(i, s)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("endpoint data maps") {
  const double h = 0.1;
  const EndpointData line = endpoints_to_w(pv(0, 1), pv(h, 1), h);
  CHECK(std::abs(line.z[0](0)) <= 1e-14);
  CHECK(std::abs(line.z[1](0)) <= 1e-14);
  CHECK(std::abs(line.w[0](0)) <= 1e-13);
  CHECK(std::abs(line.w[1](0)) <= 1e-13);

  const EndpointData e = endpoints_to_w(pv(0, 0), pv(1, 0), 1.0);
  CHECK(e.z[0](0) == doctest::Approx(1.0));
  CHECK(e.z[1](0) == doctest::Approx(0.0));
  CHECK(e.w[0](0) == doctest::Approx(2.0 * std::sqrt(3.0)));

  const Jet a = pv2(0.3, -1.0, 0.4, 2.0);
  const Jet b = pv2(0.1, 0.2, -0.5, 1.0);
  const EndpointData r = endpoints_to_w(a, b, 0.37);
  const Jet back = w_to_endpoint(a, r.w, 0.37, basis_gamma(2));
  CHECK((back.stacked() - b.stacked()).lpNorm<Eigen::Infinity>() <= 1e-12);

  CHECK_THROWS_AS(endpoints_to_w(pv(0, 0), pv(1, 0), 0.0), std::invalid_argument);
}

TEST_CASE("curve reconstruction") {
  const double h = 0.5;
  const Jet q1 = pv(0.2, -0.7);
  const PolyCurve drift = reconstruct(PolyCurve::zero(1, 2), q1, h, 0);
  CHECK(drift(0.6)(0) == doctest::Approx(0.2 + h * 0.6 * -0.7));
  const PolyCurve c = PolyCurve::constant(Eigen::VectorXd::Constant(1, 3.0));
  CHECK(reconstruct(c, q1, h, 1)(0.4)(0) == doctest::Approx(-0.7 + h * 3.0 * 0.4));
  CHECK(reconstruct(c, q1, h, 0)(0.4)(0) == doctest::Approx(0.2 + h * 0.4 * -0.7 + h * h * 3.0 * 0.16 / 2.0));
  CHECK(reconstruct(c, q1, h, 0).degree() == 2);
}

TEST_CASE("action gradient") {
  const CoefficientBasis basis(2, 6);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd c(2, basis.size());
  for (int i = 0; i < c.size(); ++i) c.data()[i] = u(rng);
  const PolyCurve qk = basis.curve(c);
  const Jet q1 = pv2(0.1, -0.3, 0.5, 0.2);
  const double h = 0.4;

  // pure 1/2 |q''|^2: gradient equals the coefficient vector
  const Eigen::VectorXd g_spline = action_gradient(models::spline(2), qk, q1, h, basis);
  CHECK((g_spline - Eigen::Map<const Eigen::VectorXd>(c.data(), c.size())).lpNorm<Eigen::Infinity>() <= 1e-12);
  CHECK(action_gradient(models::spline(2), PolyCurve::zero(2, 0), q1, h, basis).isZero(1e-14));

  // against differences of the action, and against the pointwise formula
  const auto lag = make_lagrangian("weighted", 2, models::WeightedSpline{});
  const Eigen::VectorXd g = action_gradient(lag, qk, q1, h, basis, 20);
  auto action = [&](const Eigen::VectorXd& cv) {
    const PolyCurve curve = basis.curve(Eigen::Map<const Eigen::MatrixXd>(cv.data(), 2, basis.size()));
    std::vector<PolyCurve> lv;
    for (int j = 0; j <= 2; ++j) lv.push_back(reconstruct(curve, q1, h, j));
    const Quadrature quad = gauss_legendre(20);
    double acc = 0.0;
    for (int l = 0; l < quad.nodes.size(); ++l) {
      Eigen::VectorXd x(6);
      x << lv[0](quad.nodes(l)), lv[1](quad.nodes(l)), lv[2](quad.nodes(l));
      acc += quad.weights(l) * lag.value(x);
    }
    return acc;
  };
  const Eigen::VectorXd cv = Eigen::Map<const Eigen::VectorXd>(c.data(), c.size());
  CHECK((g - fd::gradient(action, cv)).lpNorm<Eigen::Infinity>() <= 1e-6);

  const Quadrature outer = gauss_legendre(20);
  Eigen::VectorXd projected = Eigen::VectorXd::Zero(g.size());
  for (int l = 0; l < outer.nodes.size(); ++l) {
    const Eigen::VectorXd pointwise = action_gradient_at(lag, qk, q1, h, outer.nodes(l), 20);
    for (int i = 0; i < basis.size(); ++i) {
      projected.segment(2 * i, 2) += outer.weights(l) * basis.phi(i, outer.nodes(l)) * pointwise;
    }
  }
  CHECK((projected - g).lpNorm<Eigen::Infinity>() <= 1e-10);
}

TEST_CASE("tangent projection") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(14);
  for (int i = 0; i < 14; ++i) v(i) = u(rng);
  const Eigen::VectorXd p = project_tangent(v, 2, 2);
  CHECK(p.head(4).isZero(0.0));
  CHECK(p.tail(10) == v.tail(10));
  CHECK(project_tangent(p, 2, 2) == p);
  Eigen::VectorXd low = Eigen::VectorXd::Zero(14);
  low.head(4) = v.head(4);
  CHECK(project_tangent(low, 2, 2).isZero(0.0));

  // curve version: components along b_0, b_1 vanish, the rest is unchanged
  const BasisPack basis = basis_gamma(2);
  Eigen::MatrixXd coeffs(1, 5);
  coeffs << 0.3, -1.2, 0.7, 0.4, -0.1;
  const PolyCurve proj = project_tangent(PolyCurve(coeffs), basis);
  const Quadrature q = gauss_legendre(6);
  for (int j = 0; j < 2; ++j) {
    double acc = 0.0;
    for (int l = 0; l < q.nodes.size(); ++l) acc += q.weights(l) * basis.b(j, q.nodes(l)) * proj(q.nodes(l))(0);
    CHECK(std::abs(acc) <= 1e-14);
  }
  CHECK(proj.coeffs().rightCols(3) == coeffs.rightCols(3));
  const PolyCurve twice = project_tangent(proj, basis);
  CHECK((twice.coeffs() - proj.coeffs()).lpNorm<Eigen::Infinity>() <= 1e-14);
}

TEST_CASE("regularized solver on splines") {
  const double h = 0.3;
  const double qa = 0.2, va = -1.0, qb = 0.5, vb = 0.7;
  const RegularizedSolution sol = solve_regularized(models::spline(1), pv(qa, va), pv(qb, vb), h);
  for (double s : {0.0, 0.25, 0.5, 0.9, 1.0}) {
    CHECK(std::abs(sol.qk(s)(0) - hermite_acc(qa, va, qb, vb, h, s * h)) <= 1e-12 * 100.0);
  }
  CHECK(sol.coefficients.rightCols(sol.coefficients.cols() - 2).isZero(1e-12));
  const double closed = spline_exact(1).value((Eigen::VectorXd(4) << qa, va, qb, vb).finished(), h);
  CHECK(std::abs(sol.action - closed) <= 1e-10 * std::max(1.0, closed));

  const RegularizedSolution rest = solve_regularized(models::spline(1), pv(0.4, 0), pv(0.4, 0), 0.05);
  CHECK(rest.coefficients.isZero(1e-12));

  RegularizedOptions hi;
  hi.degree = 14;
  const RegularizedSolution more = solve_regularized(models::spline(1), pv(qa, va), pv(qb, vb), h, hi);
  CHECK(std::abs(more.action - sol.action) <= 1e-12 * std::max(1.0, sol.action));
}

TEST_CASE("shooting solver") {
  const ShootingSolution s = shooting_bvp(models::spline(1), pv(0, 0), pv(1, 0), 1.0);
  CHECK(s.initial.deriv(2)(0) == doctest::Approx(6.0));
  CHECK(s.initial.deriv(3)(0) == doctest::Approx(-12.0));
  CHECK(s.action == doctest::Approx(6.0));
  CHECK(std::abs(s.final.q()(0) - 1.0) <= 1e-10);
  CHECK(std::abs(s.final.deriv(1)(0)) <= 1e-10);

  const ShootingSolution line = shooting_bvp(models::spline(1), pv(0, 1), pv(0.1, 1), 0.1);
  CHECK(std::abs(line.initial.deriv(2)(0)) <= 1e-9);
  CHECK(std::abs(line.initial.deriv(3)(0)) <= 1e-8);
}

TEST_CASE("exact discrete Lagrangian, both methods") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto kinetic = models::spline_kinetic(1);
  const auto potential = models::spline_potential(1);
  for (int trial = 0; trial < 5; ++trial) {
    const double h = 0.1 + 0.1 * trial;
    const Jet a = pv(u(rng), u(rng));
    const Jet b = pv(a.q()(0) + h * u(rng), u(rng));
    const double closed = spline_exact(1).value(pack(Pair(a, b, h)), h);
    CHECK(std::abs(exact_Ld(models::spline(1), a, b, h, ExactMethod::kShooting) - closed) <= 1e-10 * std::max(1.0, closed));
    CHECK(std::abs(exact_Ld(models::spline(1), a, b, h, ExactMethod::kRegularized) - closed) <= 1e-10 * std::max(1.0, closed));
    for (const auto* lag : {&kinetic, &potential}) {
      const double r = exact_Ld(*lag, a, b, h, ExactMethod::kRegularized);
      const double s = exact_Ld(*lag, a, b, h, ExactMethod::kShooting);
      CHECK(std::abs(r - s) <= 1e-8);
    }
  }
  // free straight line: h L(q, v, 0)
  const double h = 0.2;
  const double v = 0.8;
  CHECK(exact_Ld(kinetic, pv(0, v), pv(h * v, v), h, ExactMethod::kShooting) == doctest::Approx(h * 0.5 * v * v));
  CHECK(exact_Ld(kinetic, pv(0, v), pv(h * v, v), h, ExactMethod::kRegularized) == doctest::Approx(h * 0.5 * v * v));
}
