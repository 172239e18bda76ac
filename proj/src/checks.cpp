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

#include "hovi/checks.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "hovi/del_flow.hpp"
#include "hovi/discretization.hpp"
#include "hovi/legendre_d.hpp"
#include "hovi/models.hpp"
#include "hovi/optimal_control.hpp"
#include "hovi/order_analysis.hpp"
#include "hovi/regularized_bvp.hpp"

namespace hovi {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Eigen::VectorXd random_vector(Rng& rng, int n, double scale = 1.0) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = scale * uniform(rng);
  return v;
}

CheckLine line(const std::string& suite, const std::string& name, double value, double bound, bool upper = true,
               std::string note = {}) {
  CheckLine l{suite, name, value, bound, upper, false, std::move(note)};
  l.pass = std::isfinite(value) && (upper ? value <= bound : value >= bound);
  return l;
}

std::vector<CheckLine> spline_exactness(std::uint64_t seed) {
  const std::string s = "spline-exactness";
  Rng rng(seed);
  std::vector<CheckLine> out;
  const auto ex = spline_exact(1);
  const auto lag = models::spline(1);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double h = uniform(rng, 0.05, 1.0);
    const Jet a(random_vector(rng, 1), {random_vector(rng, 1)});
    const Jet b(random_vector(rng, 1), {random_vector(rng, 1)});
    const double closed = ex.value(Pair(a, b, h));
    const double solved = exact_Ld(lag, a, b, h, ExactMethod::kRegularized);
    worst = std::max(worst, std::abs(closed - solved) / std::max(1.0, std::abs(closed)));
  }
  out.push_back(line(s, "closed_form_vs_regularized_rel", worst, 1e-10));

  // the exact method reproduces cubics
  const double h = 0.1;
  const int steps = 50;
  auto cubic = [](double t) { return Jet(Eigen::VectorXd::Constant(1, 0.3 + 0.5 * t - 0.2 * t * t + 0.1 * t * t * t),
                                         {Eigen::VectorXd::Constant(1, 0.5 - 0.4 * t + 0.3 * t * t)}); };
  const Path p = run(ex, cubic(0.0), cubic(h), Gridd(0.0, h, steps));
  double err = 0.0;
  for (int i = 0; i <= steps; ++i) err = std::max(err, (p.states[i].stacked() - cubic(i * h).stacked()).lpNorm<Eigen::Infinity>());
  out.push_back(line(s, "cubic_reproduction_max_error", err, 1e-9));
  return out;
}

std::vector<CheckLine> theorem41(std::uint64_t seed) {
  const std::string s = "theorem41";
  Rng rng(seed + 1);
  std::vector<CheckLine> out;
  const auto ex = spline_exact(1);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double h = uniform(rng, 0.1, 1.0);
    const Jet a(random_vector(rng, 1), {random_vector(rng, 1)});
    const Jet b(a.q() + h * random_vector(rng, 1), {random_vector(rng, 1)});
    const Theorem41Result r = theorem41_check(models::spline(1), a, b, h, &ex);
    worst = std::max({worst, r.left_err, r.right_err});
  }
  out.push_back(line(s, "spline_closed_form", worst, 1e-8));

  worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double h = uniform(rng, 0.1, 1.0);
    const Jet a(random_vector(rng, 1), {random_vector(rng, 1)});
    const Jet b(a.q() + h * random_vector(rng, 1), {random_vector(rng, 1)});
    const Theorem41Result r = theorem41_check(models::spline_potential(1), a, b, h);
    worst = std::max({worst, r.left_err, r.right_err});
  }
  out.push_back(line(s, "spline_potential_shooting_fd", worst, 1e-6));
  return out;
}

std::vector<CheckLine> order(std::uint64_t /*seed*/) {
  const std::string s = "order";
  std::vector<CheckLine> out;
  const auto ex = spline_exact(1);
  const auto lag = models::spline(1);
  const auto family = cubic_family(Eigen::VectorXd::Constant(1, 0.1), Eigen::VectorXd::Constant(1, 0.4),
                                   Eigen::VectorXd::Constant(1, -0.6), Eigen::VectorXd::Constant(1, 1.3));
  const auto ha = halving_sequence(0.4, 4);
  const auto hb = halving_sequence(0.025, 4);
  for (const auto& name : scheme_names()) {
    // the literal trapezoid display lacks the step factor: not consistent
    if (name == "trapezoid_velocity_literal") continue;
    const auto ld = make_scheme(name, lag);
    const OrderReport a = estimate_order(ld, ex, family, ha);
    const OrderReport b = estimate_order(ld, ex, family, hb);
    if (a.exact && b.exact) {
      out.push_back(line(s, name + "_exact_scheme", 0.0, 0.0, true, "exact scheme"));
      continue;
    }
    char note[96];
    std::snprintf(note, sizeof note, "r_hat=%.4f / %.4f", a.order, b.order);
    out.push_back(line(s, name + "_r_hat_spread", std::abs(a.order - b.order), 0.1, true, note));
    double ratio = 0.0;
    const double target = std::pow(2.0, a.order + 1.0);
    for (double r : a.ratios) ratio = std::max(ratio, std::abs(r / target - 1.0));
    for (double r : b.ratios) ratio = std::max(ratio, std::abs(r / target - 1.0));
    out.push_back(line(s, name + "_ratio_rel_dev", ratio, 0.05));
  }
  return out;
}

std::vector<CheckLine> phi(std::uint64_t /*seed*/) {
  const std::string s = "phi";
  std::vector<CheckLine> out;
  const double h = 0.01;
  const int steps = 1000;
  const auto lag = models::spline(1);
  // unit-scale data: the cubic 0.3 s - 0.2 s^2 + 0.1 s^3, s = t / 10
  auto cubic = [](double t) {
    const double u = t / 10.0;
    return Jet(Eigen::VectorXd::Constant(1, 0.3 * u - 0.2 * u * u + 0.1 * u * u * u),
               {Eigen::VectorXd::Constant(1, (0.3 - 0.4 * u + 0.3 * u * u) / 10.0)});
  };
  const Jet x0 = cubic(0.0);
  const Jet x1 = cubic(h);
  for (const char* name : {"taylor_average", "spline_exact"}) {
    const Path p = run(make_scheme(name, lag), x0, x1, Gridd(0.0, h, steps), spline_phi);
    const Eigen::VectorXd phi0 = spline_phi(Pair(x0, x1, h));
    double drift = 0.0;
    for (const auto& d : p.diagnostics) drift = std::max(drift, (d.invariant - phi0).lpNorm<Eigen::Infinity>());
    out.push_back(line(s, std::string(name) + "_drift", drift, 1e-12));
  }
  return out;
}

std::vector<CheckLine> symplectic(std::uint64_t seed) {
  const std::string s = "symplectic";
  Rng rng(seed + 2);
  std::vector<CheckLine> out;
  const double h = 0.5;
  for (const char* name : {"spline_exact", "taylor_average"}) {
    const auto ld = make_scheme(name, models::spline(1));
    double worst = 0.0;
    double control = 1e300;
    for (int i = 0; i < 20; ++i) {
      const MomentaState m{random_vector(rng, 1), random_vector(rng, 1), random_vector(rng, 1), random_vector(rng, 1)};
      worst = std::max(worst, symplectic_defect(ld, m, h));
      auto corrupted = [&](const Eigen::VectorXd& x) {
        return drifted_hamiltonian_step(ld, MomentaState::from_stacked(x, 1), h).stacked();
      };
      control = std::min(control, symplectic_defect(corrupted, m.stacked()));
    }
    out.push_back(line(s, std::string(name) + "_defect", worst, 1e-5));
    out.push_back(line(s, std::string(name) + "_corrupted_control", control, 1e-4, false));
  }
  return out;
}

std::vector<CheckLine> oracles(std::uint64_t seed) {
  const std::string s = "oracles";
  Rng rng(seed + 3);
  std::vector<CheckLine> out;
  const LagrangianModel arm = two_link_problem().lifted;
  const std::vector<std::pair<std::string, LagrangianModel>> lags = {
      {"spline", models::spline(2)}, {"spline_potential", models::spline_potential(2)}, {"two_link_lifted", arm}};
  for (const auto& [name, lag] : lags) {
    double worst = 0.0;
    for (double h : {0.05, 0.1, 0.2}) {
      Eigen::VectorXd q0 = random_vector(rng, 2, 0.5);
      if (name == "two_link_lifted") q0(0) -= 1.5;
      const Jet a(q0, {random_vector(rng, 2)});
      const Jet b(q0 + h * random_vector(rng, 2), {random_vector(rng, 2)});
      const double reg = exact_Ld(lag, a, b, h, ExactMethod::kRegularized);
      const double sh = exact_Ld(lag, a, b, h, ExactMethod::kShooting);
      worst = std::max(worst, std::abs(reg - sh));
    }
    out.push_back(line(s, name + "_regularized_vs_shooting", worst, 1e-8));
  }

  // the regularized solver returns the Hermite cubic for the spline
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double h = uniform(rng, 0.1, 1.0);
    const double qa = uniform(rng), va = uniform(rng), qb = uniform(rng), vb = uniform(rng);
    const Jet a(Eigen::VectorXd::Constant(1, qa), {Eigen::VectorXd::Constant(1, va)});
    const Jet b(Eigen::VectorXd::Constant(1, qb), {Eigen::VectorXd::Constant(1, vb)});
    const RegularizedSolution sol = solve_regularized(models::spline(1), a, b, h);
    const PolyCurve q = reconstruct(sol.qk, a, h, 0);
    for (int k = 0; k <= 20; ++k) {
      const double u = k / 20.0;
      const double h00 = 2 * u * u * u - 3 * u * u + 1, h10 = u * u * u - 2 * u * u + u;
      const double h01 = -2 * u * u * u + 3 * u * u, h11 = u * u * u - u * u;
      const double hermite = h00 * qa + h10 * h * va + h01 * qb + h11 * h * vb;
      worst = std::max(worst, std::abs(q(u)(0) - hermite));
    }
  }
  out.push_back(line(s, "hermite_cubic_recovery", worst, 1e-12));
  return out;
}

}  // namespace

std::string CheckLine::text() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s %s/%s = %.3e (%s %.1e)%s%s", pass ? "PASS" : "FAIL", suite.c_str(), name.c_str(),
                value, upper ? "<=" : ">=", bound, note.empty() ? "" : " ", note.c_str());
  return buf;
}

std::vector<std::string> check_suite_names() {
  return {"spline-exactness", "theorem41", "order", "phi", "symplectic", "oracles", "all"};
}

std::vector<CheckLine> run_checks(const std::string& suite, std::uint64_t seed) {
  if (suite == "spline-exactness") return spline_exactness(seed);
  if (suite == "theorem41") return theorem41(seed);
  if (suite == "order") return order(seed);
  if (suite == "phi") return phi(seed);
  if (suite == "symplectic") return symplectic(seed);
  if (suite == "oracles") return oracles(seed);
  if (suite == "all") {
    std::vector<CheckLine> out;
    for (const auto& name : check_suite_names()) {
      if (name == "all") continue;
      auto part = run_checks(name, seed);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw std::invalid_argument("unknown check suite '" + suite + "'");
}

}  // namespace hovi
