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

#include "hovi/regularized_bvp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <Eigen/LU>

#include "hovi/errors.hpp"
#include "hovi/finite_difference.hpp"
#include "hovi/newton.hpp"

namespace hovi {

namespace {

// (P_n(x), P_{n-1}(x)) by the three-term recurrence.
std::pair<double, double> legendre_pair(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int l = 2; l <= n; ++l) {
    const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

}  // namespace

Quadrature gauss_legendre(int points) {
  if (points < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  Quadrature out{Eigen::VectorXd(points), Eigen::VectorXd(points)};
  for (int i = 0; i < points; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, pm] = legendre_pair(points, x);
      const double dx = p / (points * (x * p - pm) / (x * x - 1.0));
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [p, pm] = legendre_pair(points, x);
    const double dp = points * (x * p - pm) / (x * x - 1.0);
    out.nodes(i) = 0.5 * (1.0 - x);
    out.weights(i) = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return out;
}

double shifted_legendre(int i, double u) { return legendre_pair(i, 2.0 * u - 1.0).first; }

// ---------------------------------------------------------------- PolyCurve

PolyCurve::PolyCurve(Eigen::MatrixXd coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.cols() < 1) throw std::invalid_argument("PolyCurve: need at least one coefficient");
}

PolyCurve PolyCurve::zero(int n, int degree) { return PolyCurve(Eigen::MatrixXd::Zero(n, degree + 1)); }

PolyCurve PolyCurve::constant(const Eigen::VectorXd& c) { return PolyCurve(Eigen::MatrixXd(c)); }

Eigen::VectorXd PolyCurve::operator()(double u) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(coeffs_.rows());
  for (Eigen::Index l = 0; l < coeffs_.cols(); ++l) out += coeffs_.col(l) * shifted_legendre(static_cast<int>(l), u);
  return out;
}

PolyCurve PolyCurve::antiderivative() const {
  // int_0^u P_l = (P_{l+1} - P_{l-1}) / (2(2l+1)), and int_0^u P_0 = (P_1 + P_0)/2.
  const Eigen::Index cols = coeffs_.cols();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(coeffs_.rows(), cols + 1);
  for (Eigen::Index l = 0; l < cols; ++l) {
    if (l == 0) {
      out.col(0) += 0.5 * coeffs_.col(0);
      out.col(1) += 0.5 * coeffs_.col(0);
    } else {
      const double f = 1.0 / (2.0 * (2.0 * static_cast<double>(l) + 1.0));
      out.col(l + 1) += f * coeffs_.col(l);
      out.col(l - 1) -= f * coeffs_.col(l);
    }
  }
  return PolyCurve(out);
}

PolyCurve PolyCurve::operator+(const PolyCurve& o) const {
  const Eigen::Index cols = std::max(coeffs_.cols(), o.coeffs_.cols());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(coeffs_.rows(), cols);
  out.leftCols(coeffs_.cols()) += coeffs_;
  out.leftCols(o.coeffs_.cols()) += o.coeffs_;
  return PolyCurve(out);
}

PolyCurve PolyCurve::operator*(double s) const { return PolyCurve(coeffs_ * s); }

PolyCurve PolyCurve::plus_constant(const Eigen::VectorXd& c) const {
  Eigen::MatrixXd out = coeffs_;
  out.col(0) += c;
  return PolyCurve(out);
}

// ---------------------------------------------------------------- bases

namespace {

double monomial_eval(const Eigen::VectorXd& c, double s) {
  double acc = 0.0;
  for (Eigen::Index r = c.size() - 1; r >= 0; --r) acc = acc * s + c(r);
  return acc;
}

double monomial_inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double acc = 0.0;
  for (Eigen::Index r = 0; r < a.size(); ++r) {
    for (Eigen::Index s = 0; s < b.size(); ++s) acc += a(r) * b(s) / static_cast<double>(r + s + 1);
  }
  return acc;
}

double factorial(int p) {
  double f = 1.0;
  for (int i = 2; i <= p; ++i) f *= i;
  return f;
}

}  // namespace

double BasisPack::a(int j, double s) const { return monomial_eval(a_monomial.col(j), s); }
double BasisPack::b(int j, double s) const { return monomial_eval(b_monomial.col(j), s); }

BasisPack basis_gamma(int k) {
  if (k < 1) throw std::invalid_argument("basis_gamma: k must be positive");
  BasisPack out;
  out.k = k;
  out.a_monomial = Eigen::MatrixXd::Zero(k, k);
  for (int j = 0; j < k; ++j) {
    const int p = k - j - 1;
    // (1-s)^p / p!
    double binom = 1.0;
    for (int r = 0; r <= p; ++r) {
      out.a_monomial(r, j) = ((r % 2 == 0) ? 1.0 : -1.0) * binom / factorial(p);
      binom = binom * (p - r) / (r + 1);
    }
  }
  // Gram-Schmidt from the constant a_(k-1) downwards, so each b_j only
  // mixes a_j, ..., a_(k-1).
  out.b_monomial = Eigen::MatrixXd::Zero(k, k);
  out.gamma = Eigen::MatrixXd::Zero(k, k);
  for (int j = k - 1; j >= 0; --j) {
    Eigen::VectorXd v = out.a_monomial.col(j);
    for (int i = k - 1; i > j; --i) v -= monomial_inner(out.a_monomial.col(j), out.b_monomial.col(i)) * out.b_monomial.col(i);
    out.b_monomial.col(j) = v / std::sqrt(monomial_inner(v, v));
  }
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < k; ++i) out.gamma(i, j) = monomial_inner(out.a_monomial.col(j), out.b_monomial.col(i));
  }
  const Quadrature quad = gauss_legendre(k + 1);
  out.b_legendre = Eigen::MatrixXd::Zero(k, k);
  for (int j = 0; j < k; ++j) {
    for (int l = 0; l < k; ++l) {
      double acc = 0.0;
      for (Eigen::Index q = 0; q < quad.nodes.size(); ++q) {
        acc += quad.weights(q) * out.b(j, quad.nodes(q)) * shifted_legendre(l, quad.nodes(q));
      }
      out.b_legendre(l, j) = (2.0 * l + 1.0) * acc;
    }
  }
  return out;
}

// ---------------------------------------------------------------- endpoint data

namespace {

void check_endpoint_jets(const Jet& q1jet, const Jet& q2jet, double h, const BasisPack& basis) {
  if (!(h > 0.0)) throw std::invalid_argument("endpoint map: h must be positive (the h = 0 limit is not supported)");
  if (q1jet.order() != q2jet.order() || q1jet.dim() != q2jet.dim()) {
    throw std::invalid_argument("endpoint map: jets differ in order or dimension");
  }
  if (q1jet.order() + 1 != basis.k) throw std::invalid_argument("endpoint map: jet order does not match basis k");
}

// sum_{i=0}^{k-j-1} h^i/i! q1^[j+i]
Eigen::VectorXd drift(const Jet& q1jet, int j, double h) {
  const int k = q1jet.order() + 1;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(q1jet.dim());
  double f = 1.0;
  for (int i = 0; i <= k - j - 1; ++i) {
    acc += f * q1jet.component(j + i);
    f *= h / (i + 1);
  }
  return acc;
}

}  // namespace

EndpointData endpoints_to_w(const Jet& q1jet, const Jet& q2jet, double h) {
  return endpoints_to_w(q1jet, q2jet, h, basis_gamma(q1jet.order() + 1));
}

EndpointData endpoints_to_w(const Jet& q1jet, const Jet& q2jet, double h, const BasisPack& basis) {
  check_endpoint_jets(q1jet, q2jet, h, basis);
  const int k = basis.k;
  const int n = q1jet.dim();
  EndpointData out{q1jet, q2jet, h, {}, {}};
  Eigen::MatrixXd zmat(n, k);
  for (int j = 0; j < k; ++j) {
    out.z.emplace_back((q2jet.component(j) - drift(q1jet, j, h)) / std::pow(h, k - j));
    zmat.col(j) = out.z.back();
  }
  // z_j = sum_i gamma(i, j) w_i  =>  Z = W gamma
  const Eigen::MatrixXd wmat = basis.gamma.transpose().partialPivLu().solve(zmat.transpose()).transpose();
  for (int i = 0; i < k; ++i) out.w.emplace_back(wmat.col(i));
  return out;
}

Jet w_to_endpoint(const Jet& q1jet, const std::vector<Eigen::VectorXd>& w, double h, const BasisPack& basis) {
  const int k = basis.k;
  if (static_cast<int>(w.size()) != k || q1jet.order() + 1 != k) {
    throw std::invalid_argument("w_to_endpoint: w must hold k vectors and the jet order must be k-1");
  }
  if (!(h > 0.0)) throw std::invalid_argument("w_to_endpoint: h must be positive");
  std::vector<Eigen::VectorXd> comps;
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(q1jet.dim());
    for (int i = 0; i < k; ++i) z += basis.gamma(i, j) * w[i];
    comps.emplace_back(drift(q1jet, j, h) + std::pow(h, k - j) * z);
  }
  const Eigen::VectorXd q = comps.front();
  return Jet(q, std::vector<Eigen::VectorXd>(comps.begin() + 1, comps.end()));
}

PolyCurve reconstruct(const PolyCurve& qk, const Jet& q1jet, double h, int j) {
  const int k = q1jet.order() + 1;
  if (j < 0 || j > k) throw std::invalid_argument("reconstruct: level out of range");
  if (qk.dim() != q1jet.dim()) throw std::invalid_argument("reconstruct: dimension mismatch");
  PolyCurve cur = qk;
  for (int level = k - 1; level >= j; --level) cur = (cur.antiderivative() * h).plus_constant(q1jet.component(level));
  return cur;
}

// ---------------------------------------------------------------- coefficient basis

CoefficientBasis::CoefficientBasis(int k, int degree) : basis_(basis_gamma(k)), degree_(degree) {
  if (degree < k) throw std::invalid_argument("CoefficientBasis: degree must be at least k");
  to_legendre_ = Eigen::MatrixXd::Zero(degree + 1, degree + 1);
  to_legendre_.topLeftCorner(k, k) = basis_.b_legendre;
  for (int i = k; i <= degree; ++i) to_legendre_(i, i) = std::sqrt(2.0 * i + 1.0);
}

PolyCurve CoefficientBasis::curve(const Eigen::MatrixXd& c) const {
  if (c.cols() != size()) throw std::invalid_argument("CoefficientBasis::curve: wrong number of coefficients");
  return PolyCurve(c * to_legendre_.transpose());
}

Eigen::MatrixXd CoefficientBasis::coefficients(const PolyCurve& q) const {
  // <P_l, P_l> = 1/(2l+1) and the phi_i are orthonormal.
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(q.dim(), size());
  const int top = std::min(q.degree(), degree_);
  for (int l = 0; l <= top; ++l) {
    out += q.coeffs().col(l) * to_legendre_.row(l) / (2.0 * l + 1.0);
  }
  return out;
}

double CoefficientBasis::phi(int i, double u) const {
  double acc = 0.0;
  for (int l = 0; l <= degree_; ++l) {
    if (to_legendre_(l, i) != 0.0) acc += to_legendre_(l, i) * shifted_legendre(l, u);
  }
  return acc;
}

// ---------------------------------------------------------------- action

namespace {

// x(u_l) = offset_l + (phi_l (x) I_n) c at every quadrature node.
struct ActionModel {
  int n = 0;
  int k = 0;
  int size = 0;
  Quadrature quad;
  std::vector<Eigen::VectorXd> offsets;
  std::vector<Eigen::MatrixXd> maps;

  ActionModel(const CoefficientBasis& basis, const Jet& q1jet, double h, int points) {
    n = q1jet.dim();
    k = basis.k();
    size = basis.size();
    quad = gauss_legendre(points > 0 ? points : basis.degree() + k + 4);
    const Jet zero_jet = Jet::zero(k - 1, 1);
    std::vector<std::vector<PolyCurve>> scalar(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
      Eigen::MatrixXd unit = Eigen::MatrixXd::Zero(1, size);
      unit(0, i) = 1.0;
      const PolyCurve top = basis.curve(unit);
      for (int j = 0; j <= k; ++j) scalar[i].push_back(reconstruct(top, zero_jet, h, j));
    }
    std::vector<PolyCurve> drift_curves;
    for (int j = 0; j <= k; ++j) drift_curves.push_back(reconstruct(PolyCurve::zero(n, 0), q1jet, h, j));
    for (Eigen::Index l = 0; l < quad.nodes.size(); ++l) {
      const double u = quad.nodes(l);
      Eigen::VectorXd off((k + 1) * n);
      Eigen::MatrixXd map = Eigen::MatrixXd::Zero((k + 1) * n, size * n);
      for (int j = 0; j <= k; ++j) {
        off.segment(j * n, n) = drift_curves[j](u);
        for (int i = 0; i < size; ++i) {
          map.block(j * n, i * n, n, n).diagonal().setConstant(scalar[i][j](u)(0));
        }
      }
      offsets.push_back(off);
      maps.push_back(map);
    }
  }

  [[nodiscard]] Eigen::VectorXd point(Eigen::Index l, const Eigen::VectorXd& c) const { return offsets[l] + maps[l] * c; }

  [[nodiscard]] double value(const LagrangianModel& lag, const Eigen::VectorXd& c) const {
    double acc = 0.0;
    for (Eigen::Index l = 0; l < quad.nodes.size(); ++l) acc += quad.weights(l) * lag.value(point(l, c));
    return acc;
  }
  [[nodiscard]] Eigen::VectorXd gradient(const LagrangianModel& lag, const Eigen::VectorXd& c) const {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(size * n);
    for (Eigen::Index l = 0; l < quad.nodes.size(); ++l) {
      g += quad.weights(l) * maps[l].transpose() * lag.gradient(point(l, c));
    }
    return g;
  }
  [[nodiscard]] Eigen::MatrixXd hessian(const LagrangianModel& lag, const Eigen::VectorXd& c) const {
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(size * n, size * n);
    for (Eigen::Index l = 0; l < quad.nodes.size(); ++l) {
      hess += quad.weights(l) * maps[l].transpose() * lag.hessian(point(l, c)) * maps[l];
    }
    return hess;
  }
};

Eigen::VectorXd stack_coefficients(const Eigen::MatrixXd& c) {
  return Eigen::Map<const Eigen::VectorXd>(c.data(), c.size());
}

Eigen::MatrixXd unstack_coefficients(const Eigen::VectorXd& v, int n) {
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), n, v.size() / n);
}

void check_second_order(const LagrangianModel& lagrangian, const Jet& q1jet, const Jet& q2jet, const char* where) {
  if (q1jet.order() != 1 || q2jet.order() != 1) {
    throw std::invalid_argument(std::string(where) + ": endpoint jets must be (q, q') for a second-order Lagrangian");
  }
  if (q1jet.dim() != lagrangian.dim() || q2jet.dim() != lagrangian.dim()) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  }
}

}  // namespace

Eigen::VectorXd action_gradient(const LagrangianModel& lagrangian, const PolyCurve& qk, const Jet& q1jet, double h,
                                const CoefficientBasis& basis, int quadrature_points) {
  const ActionModel model(basis, q1jet, h, quadrature_points);
  return model.gradient(lagrangian, stack_coefficients(basis.coefficients(qk)));
}

Eigen::VectorXd action_gradient_at(const LagrangianModel& lagrangian, const PolyCurve& qk, const Jet& q1jet,
                                   double h, double u, int quadrature_points) {
  const int k = q1jet.order() + 1;
  const int n = q1jet.dim();
  std::vector<PolyCurve> levels;
  for (int j = 0; j <= k; ++j) levels.push_back(reconstruct(qk, q1jet, h, j));
  auto stacked_at = [&](double s) {
    Eigen::VectorXd x((k + 1) * n);
    for (int j = 0; j <= k; ++j) x.segment(j * n, n) = levels[j](s);
    return x;
  };
  const Quadrature quad = gauss_legendre(quadrature_points > 0 ? quadrature_points : qk.degree() + 2 * k + 4);
  Eigen::VectorXd out = lagrangian.gradient(stacked_at(u)).segment(k * n, n);
  const double span = 1.0 - u;
  for (Eigen::Index l = 0; l < quad.nodes.size(); ++l) {
    const double s = u + span * quad.nodes(l);
    const Eigen::VectorXd g = lagrangian.gradient(stacked_at(s));
    for (int j = 0; j < k; ++j) {
      const int p = k - j - 1;
      const double kernel = std::pow(h, k - j) * std::pow(s - u, p) / factorial(p);
      out += span * quad.weights(l) * kernel * g.segment(j * n, n);
    }
  }
  return out;
}

Eigen::VectorXd project_tangent(const Eigen::VectorXd& gvec, int k, int n) {
  if (gvec.size() < static_cast<Eigen::Index>(k) * n) throw std::invalid_argument("project_tangent: vector too short");
  Eigen::VectorXd out = gvec;
  out.head(static_cast<Eigen::Index>(k) * n).setZero();
  return out;
}

PolyCurve project_tangent(const PolyCurve& dq, const BasisPack& basis) {
  // <b_j, dQ> with b_j in Legendre coordinates
  Eigen::MatrixXd out = dq.coeffs();
  for (int j = 0; j < basis.k; ++j) {
    Eigen::VectorXd inner = Eigen::VectorXd::Zero(dq.dim());
    for (int l = 0; l < basis.k && l <= dq.degree(); ++l) inner += basis.b_legendre(l, j) * dq.coeffs().col(l) / (2.0 * l + 1.0);
    for (int l = 0; l < basis.k && l <= dq.degree(); ++l) out.col(l) -= inner * basis.b_legendre(l, j);
  }
  return PolyCurve(out);
}

RegularizedSolution solve_regularized(const LagrangianModel& lagrangian, const Jet& q1jet, const Jet& q2jet, double h,
                                      const RegularizedOptions& options) {
  check_second_order(lagrangian, q1jet, q2jet, "solve_regularized");
  const int k = 2;
  const int n = lagrangian.dim();
  const CoefficientBasis basis(k, options.degree);
  RegularizedSolution out;
  out.endpoints = endpoints_to_w(q1jet, q2jet, h, basis.pack());
  const ActionModel model(basis, q1jet, h, options.quadrature_points);

  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, basis.size());
  for (int j = 0; j < k; ++j) c.col(j) = out.endpoints.w[j];
  Eigen::VectorXd full = stack_coefficients(c);
  const Eigen::Index pinned = static_cast<Eigen::Index>(k) * n;
  const Eigen::Index free = full.size() - pinned;

  auto assemble = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd x = full;
    x.tail(free) = y;
    return x;
  };
  auto residual = [&](const Eigen::VectorXd& y) { return Eigen::VectorXd(model.gradient(lagrangian, assemble(y)).tail(free)); };
  auto jacobian = [&](const Eigen::VectorXd& y) {
    return Eigen::MatrixXd(model.hessian(lagrangian, assemble(y)).bottomRightCorner(free, free));
  };

  NewtonOptions nopts;
  nopts.tolerance = options.tolerance;
  nopts.max_iterations = options.max_iterations;
  nopts.scale = std::max(1.0, model.gradient(lagrangian, full).lpNorm<Eigen::Infinity>());
  const NewtonResult res = newton_solve(residual, jacobian, full.tail(free), nopts, SolverFailure::kSingularHessian);

  full = assemble(res.x);
  out.coefficients = unstack_coefficients(full, n);
  out.qk = basis.curve(out.coefficients);
  out.action = h * model.value(lagrangian, full);
  out.residual = res.residual_norm;
  out.iterations = res.iterations;
  return out;
}

// ---------------------------------------------------------------- shooting

namespace {

Eigen::VectorXd flow_rhs(const LagrangianModel& lagrangian, const Eigen::VectorXd& y, int n) {
  const Jet jet = Jet::from_stacked(y, 3, n);
  Eigen::VectorXd dy(4 * n);
  dy.head(3 * n) = y.tail(3 * n);
  dy.tail(n) = fourth_order_rhs(lagrangian, jet);
  return dy;
}

}  // namespace

JetFlow integrate_jet(const LagrangianModel& lagrangian, const Jet& jet3, double duration, int substeps) {
  if (jet3.order() != 3 || jet3.dim() != lagrangian.dim()) {
    throw std::invalid_argument("integrate_jet: need an order-3 jet of the model dimension");
  }
  if (substeps < 1) throw std::invalid_argument("integrate_jet: substeps must be positive");
  const int n = lagrangian.dim();
  const double dt = duration / substeps;
  Eigen::VectorXd y = jet3.stacked();
  double action = 0.0;
  auto rate = [&](const Eigen::VectorXd& state, Eigen::VectorXd& dy) {
    dy = flow_rhs(lagrangian, state, n);
    return lagrangian.value(Eigen::VectorXd(state.head(3 * n)));
  };
  Eigen::VectorXd k1, k2, k3, k4;
  for (int s = 0; s < substeps; ++s) {
    const double a1 = rate(y, k1);
    const double a2 = rate(y + 0.5 * dt * k1, k2);
    const double a3 = rate(y + 0.5 * dt * k2, k3);
    const double a4 = rate(y + dt * k3, k4);
    y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    action += dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
  }
  return {Jet::from_stacked(y, 3, n), action};
}

namespace {

ShootingSolution shoot_fixed(const LagrangianModel& lagrangian, const Jet& q1jet, const Jet& q2jet, double h,
                             int substeps, const Eigen::VectorXd& guess, const ShootingOptions& options) {
  const int n = lagrangian.dim();
  auto initial_jet = [&](const Eigen::VectorXd& x) {
    return Jet(q1jet.q(), {q1jet.deriv(1), Eigen::VectorXd(x.head(n)), Eigen::VectorXd(x.tail(n))});
  };
  auto residual = [&](const Eigen::VectorXd& x) {
    const JetFlow f = integrate_jet(lagrangian, initial_jet(x), h, substeps);
    Eigen::VectorXd r(2 * n);
    r << f.jet.q() - q2jet.q(), h * (f.jet.deriv(1) - q2jet.deriv(1));
    return r;
  };
  auto jacobian = [&](const Eigen::VectorXd& x) { return fd::jacobian(residual, x); };

  NewtonOptions nopts;
  nopts.tolerance = options.tolerance;
  nopts.max_iterations = options.max_iterations;
  nopts.scale = std::max({1.0, q1jet.q().lpNorm<Eigen::Infinity>(), q2jet.q().lpNorm<Eigen::Infinity>(),
                          h * q1jet.deriv(1).lpNorm<Eigen::Infinity>(), h * q2jet.deriv(1).lpNorm<Eigen::Infinity>()});
  const NewtonResult res = newton_solve(residual, jacobian, guess, nopts, SolverFailure::kSingularHessian);

  ShootingSolution out;
  out.initial = initial_jet(res.x);
  const JetFlow f = integrate_jet(lagrangian, out.initial, h, substeps);
  out.final = f.jet;
  out.action = f.action;
  out.residual = res.residual_norm;
  out.substeps = substeps;
  out.iterations = res.iterations;
  return out;
}

Eigen::VectorXd unknowns(const ShootingSolution& s) {
  Eigen::VectorXd x(2 * s.initial.dim());
  x << s.initial.deriv(2), s.initial.deriv(3);
  return x;
}

}  // namespace

ShootingSolution shooting_bvp(const LagrangianModel& lagrangian, const Jet& q1jet, const Jet& q2jet, double h,
                              const ShootingOptions& options) {
  check_second_order(lagrangian, q1jet, q2jet, "shooting_bvp");
  if (!(h > 0.0)) throw std::invalid_argument("shooting_bvp: h must be positive");
  const int n = lagrangian.dim();
  // Hermite cubic through the endpoint data
  const Eigen::VectorXd dq = q2jet.q() - q1jet.q();
  Eigen::VectorXd guess(2 * n);
  guess << (6.0 * dq - h * (4.0 * q1jet.deriv(1) + 2.0 * q2jet.deriv(1))) / (h * h),
      (-12.0 * dq + 6.0 * h * (q1jet.deriv(1) + q2jet.deriv(1))) / (h * h * h);
  if (options.guess.size() == 2 * n) guess = options.guess;

  int substeps = options.substeps;
  ShootingSolution coarse = shoot_fixed(lagrangian, q1jet, q2jet, h, substeps, guess, options);
  if (options.fixed_substeps) return coarse;
  while (2 * substeps <= options.max_substeps) {
    substeps *= 2;
    ShootingSolution fine = shoot_fixed(lagrangian, q1jet, q2jet, h, substeps, unknowns(coarse), options);
    const Eigen::VectorXd xf = unknowns(fine);
    const double change = (xf - unknowns(coarse)).lpNorm<Eigen::Infinity>();
    const double action_change = std::abs(fine.action - coarse.action);
    if (change <= options.self_consistency * std::max(1.0, xf.lpNorm<Eigen::Infinity>()) &&
        action_change <= options.self_consistency * std::max(1.0, std::abs(fine.action))) {
      return fine;
    }
    coarse = std::move(fine);
  }
  throw SolverError(SolverFailure::kNoConvergence,
                    "shooting: RK4 substeps reached " + std::to_string(options.max_substeps) +
                        " without self-consistency",
                    coarse.residual);
}

// ---------------------------------------------------------------- exact discrete Lagrangian

ExactMethod parse_exact_method(const std::string& name) {
  if (name == "regularized") return ExactMethod::kRegularized;
  if (name == "shooting") return ExactMethod::kShooting;
  throw std::invalid_argument("unknown exact method '" + name + "' (regularized | shooting)");
}

double exact_Ld(const LagrangianModel& lagrangian, const Jet& q1jet, const Jet& q2jet, double h, ExactMethod method,
                const RegularizedOptions& regularized, const ShootingOptions& shooting) {
  if (method == ExactMethod::kRegularized) return solve_regularized(lagrangian, q1jet, q2jet, h, regularized).action;
  return shooting_bvp(lagrangian, q1jet, q2jet, h, shooting).action;
}

DiscreteLagrangian exact_discrete_lagrangian(const LagrangianModel& lagrangian, ExactMethod method,
                                             const RegularizedOptions& regularized, const ShootingOptions& shooting) {
  const int n = lagrangian.dim();
  auto value = [=](const Eigen::VectorXd& x, double h) {
    const Pair s = unpack(x, 2, n, h);
    return exact_Ld(lagrangian, s.left(), s.right(), h, method, regularized, shooting);
  };
  return DiscreteLagrangian(method == ExactMethod::kRegularized ? "exact_regularized" : "exact_shooting", 2, n, value);
}

}  // namespace hovi
