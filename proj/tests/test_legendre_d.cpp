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
#include "hovi/del_flow.hpp"
#include "hovi/legendre_d.hpp"
#include "hovi/models.hpp"

using namespace hovi;

namespace {

Jet pv(double q, double v) { return Jet(Eigen::VectorXd::Constant(1, q), {Eigen::VectorXd::Constant(1, v)}); }

MomentaState mom(double q, double v, double p, double pt) {
  return {Eigen::VectorXd::Constant(1, q), Eigen::VectorXd::Constant(1, v), Eigen::VectorXd::Constant(1, p),
          Eigen::VectorXd::Constant(1, pt)};
}

}  // namespace

TEST_CASE("discrete Legendre transforms of the exact spline Lagrangian") {
  const auto ld = spline_exact(1);
  const Pair s(pv(0, 0), pv(1, 0), 1.0);
  const MomentaState plus = fplus(ld, s);
  CHECK(plus.q(0) == 1.0);
  CHECK(plus.v(0) == 0.0);
  CHECK(plus.p(0) == doctest::Approx(12.0));
  CHECK(plus.ptilde(0) == doctest::Approx(-6.0));
  const MomentaState minus = fminus(ld, s);
  CHECK(minus.q(0) == 0.0);
  CHECK(minus.p(0) == doctest::Approx(12.0));
  CHECK(minus.ptilde(0) == doctest::Approx(6.0));

  const Pair rest(pv(0.4, 0), pv(0.4, 0), 0.3);
  CHECK(fplus(ld, rest).p.isZero(1e-12));
  CHECK(fplus(ld, rest).ptilde.isZero(1e-12));
  CHECK(fminus(ld, rest).p.isZero(1e-12));
}

TEST_CASE("inverse transforms") {
  const auto ld = taylor_average(models::spline(1));
  const Pair s(pv(0.2, -0.3), pv(0.1, 0.5), 0.5);
  const Pair back = fminus_inverse(ld, fminus(ld, s), 0.5);
  CHECK((pack(back) - pack(s)).lpNorm<Eigen::Infinity>() <= 1e-12);
  const Pair back2 = fplus_inverse(ld, fplus(ld, s), 0.5);
  CHECK((pack(back2) - pack(s)).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("discrete Hamiltonian map") {
  const double h = 0.5;
  const auto ex = spline_exact(1);
  const MomentaState m = mom(0.3, -0.2, 0.7, 0.1);
  const MomentaState next = hamiltonian_step(ex, m, h);
  CHECK(next.p(0) == doctest::Approx(m.p(0)));

  const MomentaState rest = mom(0.8, 0, 0, 0);
  CHECK((hamiltonian_step(ex, rest, h).stacked() - rest.stacked()).lpNorm<Eigen::Infinity>() <= 1e-12);

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& ld : {ex, taylor_average(models::spline(1)), midpoint_difference(models::spline_potential(1))}) {
    for (int i = 0; i < 10; ++i) {
      const MomentaState r = mom(u(rng), u(rng), u(rng), u(rng));
      const Eigen::VectorXd a = hamiltonian_step(ld, r, h).stacked();
      CHECK((a - hamiltonian_step_minus(ld, r, h).stacked()).lpNorm<Eigen::Infinity>() <= 1e-10);
      CHECK((a - hamiltonian_step_plus(ld, r, h).stacked()).lpNorm<Eigen::Infinity>() <= 1e-10);

      const Pair s(pv(u(rng), u(rng)), pv(u(rng), u(rng)), h);
      const Jet nxt = step(ld, s.left(), s.right(), h);
      CHECK((fplus(ld, s).stacked() - fminus(ld, Pair(s.right(), nxt, h)).stacked()).lpNorm<Eigen::Infinity>() <= 1e-10);
    }
  }
}

TEST_CASE("symplectic defect") {
  const double h = 0.5;
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& ld : {spline_exact(1), taylor_average(models::spline(1))}) {
    for (int i = 0; i < 5; ++i) {
      const MomentaState m = mom(u(rng), u(rng), u(rng), u(rng));
      CHECK(symplectic_defect(ld, m, h) <= 1e-5);
      auto corrupted = [&](const Eigen::VectorXd& x) {
        return drifted_hamiltonian_step(ld, MomentaState::from_stacked(x, 1), h).stacked();
      };
      CHECK(symplectic_defect(corrupted, m.stacked()) >= 1e-4);
    }
  }
  // identity and a shear are symplectic
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(8, -1.0, 1.0);
  CHECK(symplectic_defect([](const Eigen::VectorXd& y) { return y; }, x) <= 1e-9);
  CHECK(symplectic_defect(
            [](const Eigen::VectorXd& y) {
              Eigen::VectorXd z = y;
              z.tail(4) += 0.3 * y.head(4);
              return z;
            },
            x) <= 1e-9);
}

TEST_CASE("Legendre transforms commute with the exact discrete Lagrangian") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto ex = spline_exact(1);
  for (int i = 0; i < 5; ++i) {
    const double h = 0.2 + 0.1 * i;
    const Jet a = pv(u(rng), u(rng));
    const Jet b = pv(a.q()(0) + h * u(rng), u(rng));
    const Theorem41Result r = theorem41_check(models::spline(1), a, b, h, &ex);
    CHECK(r.left_err <= 1e-8);
    CHECK(r.right_err <= 1e-8);
  }
  const Theorem41Result line = theorem41_check(models::spline(1), pv(0, 1), pv(0.1, 1), 0.1, &ex);
  CHECK(line.left_err <= 1e-8);

  const Theorem41Result pot = theorem41_check(models::spline_potential(1), pv(0.3, -0.4), pv(0.25, 0.2), 0.1);
  CHECK(pot.left_err <= 1e-6);
  CHECK(pot.right_err <= 1e-6);
}
