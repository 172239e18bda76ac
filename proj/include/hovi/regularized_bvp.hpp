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

#ifndef HOVI_REGULARIZED_BVP_HPP
#define HOVI_REGULARIZED_BVP_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "hovi/discretization.hpp"
#include "hovi/jet_space.hpp"
#include "hovi/lagrangian.hpp"

namespace hovi {

/// Gauss-Legendre rule on [0, 1].
struct Quadrature {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

Quadrature gauss_legendre(int points);

/// Shifted Legendre polynomial P_i(2u - 1).
double shifted_legendre(int i, double u);

/// Vector polynomial on [0, 1], one row per component, columns are
/// coefficients of the shifted Legendre polynomials P_0(2u-1), P_1(2u-1), ...
class PolyCurve {
 public:
  PolyCurve() = default;
  explicit PolyCurve(Eigen::MatrixXd coeffs);
  static PolyCurve zero(int n, int degree);
  static PolyCurve constant(const Eigen::VectorXd& c);

  [[nodiscard]] int dim() const { return static_cast<int>(coeffs_.rows()); }
  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.cols()) - 1; }
  [[nodiscard]] const Eigen::MatrixXd& coeffs() const { return coeffs_; }

  [[nodiscard]] Eigen::VectorXd operator()(double u) const;
  /// u -> integral from 0 to u.
  [[nodiscard]] PolyCurve antiderivative() const;
  [[nodiscard]] PolyCurve operator+(const PolyCurve& o) const;
  [[nodiscard]] PolyCurve operator*(double s) const;
  [[nodiscard]] PolyCurve plus_constant(const Eigen::VectorXd& c) const;

 private:
  Eigen::MatrixXd coeffs_;
};

/// a_j(s) = (1-s)^(k-j-1)/(k-j-1)!, the orthonormal b_j spanning the same
/// space, and gamma with a_j = sum_i gamma(i, j) b_i.
struct BasisPack {
  int k = 0;
  /// Column j: monomial coefficients (1, s, s^2, ...) of a_j.
  Eigen::MatrixXd a_monomial;
  /// Column j: monomial coefficients of b_j.
  Eigen::MatrixXd b_monomial;
  /// Column j: coefficients of b_j in the shifted Legendre basis.
  Eigen::MatrixXd b_legendre;
  Eigen::MatrixXd gamma;

  [[nodiscard]] double a(int j, double s) const;
  [[nodiscard]] double b(int j, double s) const;
};

BasisPack basis_gamma(int k);

/// Endpoint data of one step: z from the jets, w = gamma-coordinates of z.
struct EndpointData {
  Jet q1jet;
  Jet q2jet;
  double h = 0.0;
  std::vector<Eigen::VectorXd> z;
  std::vector<Eigen::VectorXd> w;
};

EndpointData endpoints_to_w(const Jet& q1jet, const Jet& q2jet, double h);
EndpointData endpoints_to_w(const Jet& q1jet, const Jet& q2jet, double h, const BasisPack& basis);
/// Inverse map: rebuilds the final jet from the initial jet and w.
Jet w_to_endpoint(const Jet& q1jet, const std::vector<Eigen::VectorXd>& w, double h, const BasisPack& basis);

/// Q^[j] from Q^[k] and the initial jet (k = q1jet.order() + 1), u in [0, 1].
PolyCurve reconstruct(const PolyCurve& qk, const Jet& q1jet, double h, int j);

/// Coefficient space: Q^[k] = sum_i c_i phi_i with phi_j = b_j for j < k and
/// phi_i = sqrt(2i+1) P_i(2u-1) for k <= i <= m. The basis is orthonormal.
class CoefficientBasis {
 public:
  CoefficientBasis(int k, int degree);
  [[nodiscard]] int k() const { return basis_.k; }
  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] int size() const { return degree_ + 1; }
  [[nodiscard]] const BasisPack& pack() const { return basis_; }
  /// Column i: shifted Legendre coefficients of phi_i.
  [[nodiscard]] const Eigen::MatrixXd& to_legendre() const { return to_legendre_; }
  /// coefficient matrix (n x size) -> PolyCurve.
  [[nodiscard]] PolyCurve curve(const Eigen::MatrixXd& c) const;
  /// PolyCurve -> coefficient matrix (exact projection for degree <= m).
  [[nodiscard]] Eigen::MatrixXd coefficients(const PolyCurve& q) const;
  [[nodiscard]] double phi(int i, double u) const;

 private:
  BasisPack basis_;
  int degree_;
  Eigen::MatrixXd to_legendre_;
};

struct RegularizedOptions {
  int degree = 8;
  /// Quadrature points; <= 0 picks degree + k + 4.
  int quadrature_points = 0;
  double tolerance = 1e-12;
  int max_iterations = 50;
};

struct RegularizedSolution {
  PolyCurve qk;
  /// n x (m+1) coefficients in the CoefficientBasis.
  Eigen::MatrixXd coefficients;
  EndpointData endpoints;
  /// integral over [0, h] of L along the curve.
  double action = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Gradient of S(c) = int_0^1 L(Q(u)) du with respect to all coefficients,
/// stacked coefficient-major (c_0, c_1, ...), each an n-block.
Eigen::VectorXd action_gradient(const LagrangianModel& lagrangian, const PolyCurve& qk, const Jet& q1jet, double h,
                                const CoefficientBasis& basis, int quadrature_points = 0);

/// The pointwise gradient function
/// grad S(u) = sum_j int_u^1 dL/dq^[j](Q(s)) h^(k-j) (s-u)^(k-j-1)/(k-j-1)! ds + dL/dq^[k](Q(u)).
Eigen::VectorXd action_gradient_at(const LagrangianModel& lagrangian, const PolyCurve& qk, const Jet& q1jet,
                                   double h, double u, int quadrature_points = 0);

/// Zeroes the components along b_0 .. b_(k-1) (stacked coefficient vector).
Eigen::VectorXd project_tangent(const Eigen::VectorXd& gvec, int k, int n);
/// Same projection on a curve: dQ - sum_j <b_j, dQ> b_j.
PolyCurve project_tangent(const PolyCurve& dq, const BasisPack& basis);

RegularizedSolution solve_regularized(const LagrangianModel& lagrangian, const Jet& q1jet, const Jet& q2jet, double h,
                                      const RegularizedOptions& options = {});

struct ShootingOptions {
  int substeps = 16;
  int max_substeps = 1024;
  /// When true, `substeps` is used as is (no doubling check).
  bool fixed_substeps = false;
  double self_consistency = 1e-11;
  double tolerance = 1e-13;
  int max_iterations = 50;
  /// Starting (second, third derivative) at t = 0; Hermite cubic values when empty.
  Eigen::VectorXd guess;
};

struct ShootingSolution {
  /// (q, q', q'', q''') at t = 0.
  Jet initial;
  /// Same at t = h.
  Jet final;
  double action = 0.0;
  double residual = 0.0;
  int substeps = 0;
  int iterations = 0;
};

/// RK4 on the explicit fourth-order flow; also integrates the action.
struct JetFlow {
  Jet jet;
  double action = 0.0;
};
JetFlow integrate_jet(const LagrangianModel& lagrangian, const Jet& jet3, double duration, int substeps);

ShootingSolution shooting_bvp(const LagrangianModel& lagrangian, const Jet& q1jet, const Jet& q2jet, double h,
                              const ShootingOptions& options = {});

enum class ExactMethod { kRegularized, kShooting };

ExactMethod parse_exact_method(const std::string& name);

double exact_Ld(const LagrangianModel& lagrangian, const Jet& q1jet, const Jet& q2jet, double h, ExactMethod method,
                const RegularizedOptions& regularized = {}, const ShootingOptions& shooting = {});

/// L_d^e as a DiscreteLagrangian (value only, partials by central differences).
/// Pin `shooting.fixed_substeps` before differentiating with the shooting method.
DiscreteLagrangian exact_discrete_lagrangian(const LagrangianModel& lagrangian, ExactMethod method,
                                             const RegularizedOptions& regularized = {},
                                             const ShootingOptions& shooting = {});

}  // namespace hovi

#endif  // HOVI_REGULARIZED_BVP_HPP
