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

#ifndef HOVI_MODELS_HPP
#define HOVI_MODELS_HPP

#include "hovi/lagrangian.hpp"

namespace hovi::models {

/// Cubic-spline Lagrangian 1/2 |q''|^2.
struct Spline {
  template <typename S>
  S operator()(const VectorX<S>& /*q*/, const VectorX<S>& /*v*/, const VectorX<S>& a) const {
    return 0.5 * a.dot(a);
  }
};

/// 1/2 |q''|^2 + 1/2 k |q|^2.
struct SplinePotential {
  double stiffness = 1.0;
  template <typename S>
  S operator()(const VectorX<S>& q, const VectorX<S>& /*v*/, const VectorX<S>& a) const {
    return 0.5 * a.dot(a) + 0.5 * stiffness * q.dot(q);
  }
};

/// 1/2 |q''|^2 + 1/2 c |q'|^2.
struct SplineKinetic {
  double weight = 1.0;
  template <typename S>
  S operator()(const VectorX<S>& /*q*/, const VectorX<S>& v, const VectorX<S>& a) const {
    return 0.5 * a.dot(a) + 0.5 * weight * v.dot(v);
  }
};

/// 1/2 (1 + |q|^2) |q''|^2, a configuration-dependent metric.
struct WeightedSpline {
  template <typename S>
  S operator()(const VectorX<S>& q, const VectorX<S>& /*v*/, const VectorX<S>& a) const {
    return 0.5 * (1.0 + q.dot(q)) * a.dot(a);
  }
};

/// 1/2 |q''|^2 + sum_i q'_i (a null-Lagrangian shift of the spline).
struct SplineLinearVelocity {
  template <typename S>
  S operator()(const VectorX<S>& /*q*/, const VectorX<S>& v, const VectorX<S>& a) const {
    return 0.5 * a.dot(a) + v.sum();
  }
};

/// q''.q' : linear in q'', hence not regular.
struct AccelerationDotVelocity {
  template <typename S>
  S operator()(const VectorX<S>& /*q*/, const VectorX<S>& v, const VectorX<S>& a) const {
    return a.dot(v);
  }
};

/// Free particle 1/2 |q'|^2 (mechanical, first order).
struct FreeParticle {
  double mass = 1.0;
  template <typename S>
  S operator()(const VectorX<S>& /*q*/, const VectorX<S>& v) const {
    return 0.5 * mass * v.dot(v);
  }
};

/// Planar pendulum(s) 1/2 m l^2 |q'|^2 + m g l sum cos(q_i), angles from the downward vertical.
struct Pendulum {
  double mass = 1.0;
  double length = 1.0;
  double gravity = 9.8;
  template <typename S>
  S operator()(const VectorX<S>& q, const VectorX<S>& v) const {
    using std::cos;
    S pot(0.0);
    for (Eigen::Index i = 0; i < q.size(); ++i) pot = pot + cos(q(i));
    return 0.5 * mass * length * length * v.dot(v) + mass * gravity * length * pot;
  }
};

inline LagrangianModel spline(int n) { return make_lagrangian("spline", n, Spline{}); }
inline LagrangianModel spline_potential(int n, double stiffness = 1.0) {
  return make_lagrangian("spline_potential", n, SplinePotential{stiffness});
}
inline LagrangianModel spline_kinetic(int n, double weight = 1.0) {
  return make_lagrangian("spline_kinetic", n, SplineKinetic{weight});
}

}  // namespace hovi::models

#endif  // HOVI_MODELS_HPP
