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

#include <random>

#include "doctest.h"
#include "hovi/jet_space.hpp"

using namespace hovi;

TEST_CASE("uniform grid spacing and nodes") {
  const Gridd g = uniform_grid(0.0, 10.0, 1000);
  CHECK(g.h() == doctest::Approx(0.01));
  CHECK(g.nodes() == 1001);
  CHECK(uniform_grid(0.0, 1.0, 1).h() == 1.0);
  const Gridd small = uniform_grid(0.0, 0.3, 3);
  CHECK(small.node(2) == doctest::Approx(0.2));
  CHECK(small.node(3) == doctest::Approx(0.3));
  // recomputing a node gives the same bits
  CHECK(g.node(517) == g.node(517));
  CHECK(g.node(517) == 0.0 + 517.0 * g.h());
  CHECK_THROWS_AS(uniform_grid(1.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("pack order and unpack") {
  const Pair s(Jet(Eigen::VectorXd::Constant(1, 1.0), {Eigen::VectorXd::Constant(1, 2.0)}),
               Jet(Eigen::VectorXd::Constant(1, 3.0), {Eigen::VectorXd::Constant(1, 4.0)}), 0.5);
  const Eigen::VectorXd v = pack(s);
  REQUIRE(v.size() == 4);
  CHECK(v(0) == 1.0);
  CHECK(v(1) == 2.0);
  CHECK(v(2) == 3.0);
  CHECK(v(3) == 4.0);

  const Pair z(Jet::zero(1, 2), Jet::zero(1, 2), 1.0);
  CHECK(pack(z).size() == 8);
  CHECK(pack(z).isZero(0.0));

  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  Eigen::VectorXd r(8);
  for (int i = 0; i < 8; ++i) r(i) = nd(rng);
  const Pair back = unpack(r, 2, 2, 0.1);
  CHECK(pack(back) == r);
  CHECK(back.left().deriv(1)(1) == r(3));

  CHECK_THROWS_AS(unpack(Eigen::VectorXd(Eigen::VectorXd::Zero(7)), 2, 2, 0.1), std::invalid_argument);
}

TEST_CASE("state invariants are enforced") {
  CHECK_THROWS_AS(Jet(Eigen::VectorXd::Zero(2), {Eigen::VectorXd::Zero(3)}), std::invalid_argument);
  CHECK_THROWS_AS(Pair(Jet::zero(1, 2), Jet::zero(2, 2), 0.1), std::invalid_argument);
  CHECK_THROWS_AS(Pair(Jet::zero(1, 2), Jet::zero(1, 2), 0.0), std::invalid_argument);
  const Jet j = Jet::zero(2, 3).extended(Eigen::VectorXd::Ones(3));
  CHECK(j.order() == 3);
  CHECK(j.truncated(1).order() == 1);
}
