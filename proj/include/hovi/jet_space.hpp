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

#ifndef HOVI_JET_SPACE_HPP
#define HOVI_JET_SPACE_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace hovi {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// A point of the higher-order tangent bundle T^(m)Q in chart coordinates:
/// a position and `order` successive derivatives, all of dimension n.
template <typename Scalar>
class JetPoint {
 public:
  using Vector = VectorX<Scalar>;

  JetPoint() = default;

  JetPoint(Vector q, std::vector<Vector> derivs) {
    components_.reserve(derivs.size() + 1);
    components_.push_back(std::move(q));
    for (auto& d : derivs) {
      if (d.size() != components_.front().size()) {
        throw std::invalid_argument("JetPoint: derivative dimension " + std::to_string(d.size()) +
                                    " does not match position dimension " +
                                    std::to_string(components_.front().size()));
      }
      components_.push_back(std::move(d));
    }
  }

  static JetPoint zero(int order, int n) {
    return JetPoint(Vector::Zero(n), std::vector<Vector>(order, Vector::Zero(n)));
  }

  /// Splits a stacked (q, q', ..., q^(order)) vector.
  static JetPoint from_stacked(const Vector& x, int order, int n) {
    if (x.size() != static_cast<Eigen::Index>(order + 1) * n) {
      throw std::invalid_argument("JetPoint::from_stacked: length mismatch");
    }
    std::vector<Vector> derivs;
    derivs.reserve(order);
    for (int j = 1; j <= order; ++j) derivs.push_back(x.segment(j * n, n));
    return JetPoint(x.head(n), std::move(derivs));
  }

  [[nodiscard]] int order() const { return static_cast<int>(components_.size()) - 1; }
  [[nodiscard]] int dim() const { return components_.empty() ? 0 : static_cast<int>(components_.front().size()); }

  [[nodiscard]] const Vector& q() const { return components_.front(); }
  /// j-th derivative, 1 <= j <= order.
  [[nodiscard]] const Vector& deriv(int j) const { return components_.at(static_cast<std::size_t>(j)); }
  /// j-th component, 0 <= j <= order (component 0 is the position).
  [[nodiscard]] const Vector& component(int j) const { return components_.at(static_cast<std::size_t>(j)); }
  [[nodiscard]] const std::vector<Vector>& components() const { return components_; }

  [[nodiscard]] Vector stacked() const {
    Vector out(static_cast<Eigen::Index>(components_.size()) * dim());
    for (std::size_t j = 0; j < components_.size(); ++j) out.segment(static_cast<Eigen::Index>(j) * dim(), dim()) = components_[j];
    return out;
  }

  /// Jet of one higher order with `next` as the new top derivative.
  [[nodiscard]] JetPoint extended(Vector next) const {
    std::vector<Vector> derivs(components_.begin() + 1, components_.end());
    derivs.push_back(std::move(next));
    return JetPoint(q(), std::move(derivs));
  }

  /// Lower-order jet keeping components 0..order.
  [[nodiscard]] JetPoint truncated(int new_order) const {
    if (new_order > order()) throw std::invalid_argument("JetPoint::truncated: order too large");
    return JetPoint(q(), std::vector<Vector>(components_.begin() + 1, components_.begin() + 1 + new_order));
  }

 private:
  std::vector<Vector> components_;
};

/// Discrete state for one step: a point of T^(k-1)Q x T^(k-1)Q and the step h.
template <typename Scalar>
class PairState {
 public:
  using Jet = JetPoint<Scalar>;

  PairState(Jet left, Jet right, Scalar h) : left_(std::move(left)), right_(std::move(right)), h_(h) {
    if (left_.order() != right_.order() || left_.dim() != right_.dim()) {
      throw std::invalid_argument("PairState: left and right jets differ in order or dimension");
    }
    if (!(h_ > Scalar(0))) throw std::invalid_argument("PairState: step h must be positive");
  }

  [[nodiscard]] const Jet& left() const { return left_; }
  [[nodiscard]] const Jet& right() const { return right_; }
  [[nodiscard]] Scalar h() const { return h_; }
  /// Number of jet components per endpoint (k for T^(k-1)Q).
  [[nodiscard]] int k() const { return left_.order() + 1; }
  [[nodiscard]] int dim() const { return left_.dim(); }

 private:
  Jet left_;
  Jet right_;
  Scalar h_;
};

/// Uniform time grid t_i = t0 + i*h, i = 0..steps.
template <typename Scalar>
class Grid {
 public:
  /// One unit step from 0.
  Grid() : Grid(Scalar(0), Scalar(1), 1) {}
  Grid(Scalar t0, Scalar h, int steps) : t0_(t0), h_(h), steps_(steps) {
    if (!(h_ > Scalar(0))) throw std::invalid_argument("Grid: h must be positive");
    if (steps_ < 1) throw std::invalid_argument("Grid: need at least one step");
  }

  [[nodiscard]] Scalar t0() const { return t0_; }
  [[nodiscard]] Scalar h() const { return h_; }
  [[nodiscard]] int steps() const { return steps_; }
  [[nodiscard]] int nodes() const { return steps_ + 1; }
  [[nodiscard]] Scalar node(int i) const { return t0_ + Scalar(i) * h_; }

 private:
  Scalar t0_;
  Scalar h_;
  int steps_;
};

template <typename Scalar>
Grid<Scalar> uniform_grid(Scalar t0, Scalar t_end, int steps) {
  if (!(t_end > t0)) throw std::invalid_argument("uniform_grid: empty or negative time span");
  if (steps < 1) throw std::invalid_argument("uniform_grid: steps must be >= 1");
  return Grid<Scalar>(t0, (t_end - t0) / Scalar(steps), steps);
}

/// Flattens (left.q, left.derivs..., right.q, right.derivs...).
template <typename Scalar>
VectorX<Scalar> pack(const PairState<Scalar>& state) {
  const Eigen::Index half = static_cast<Eigen::Index>(state.k()) * state.dim();
  VectorX<Scalar> out(2 * half);
  out.head(half) = state.left().stacked();
  out.tail(half) = state.right().stacked();
  return out;
}

template <typename Scalar>
PairState<Scalar> unpack(const VectorX<Scalar>& v, int k, int n, Scalar h) {
  const Eigen::Index half = static_cast<Eigen::Index>(k) * n;
  if (k < 1 || n < 1 || v.size() != 2 * half) {
    throw std::invalid_argument("unpack: vector length " + std::to_string(v.size()) +
                                " does not equal 2*k*n = " + std::to_string(2 * half));
  }
  using Jet = JetPoint<Scalar>;
  return PairState<Scalar>(Jet::from_stacked(v.head(half), k - 1, n),
                           Jet::from_stacked(v.tail(half), k - 1, n), h);
}

/// Per-step record attached to a DiscretePath.
struct StepDiagnostics {
  double del_residual = 0.0;
  int newton_iterations = 0;
  Eigen::VectorXd invariant;
};

/// Time grid plus the N+1 discrete states and per-step diagnostics.
template <typename Scalar>
struct DiscretePath {
  Grid<Scalar> grid;
  std::vector<JetPoint<Scalar>> states;
  std::vector<StepDiagnostics> diagnostics;
};

using Jet = JetPoint<double>;
using Pair = PairState<double>;
using Gridd = Grid<double>;
using Path = DiscretePath<double>;

}  // namespace hovi

#endif  // HOVI_JET_SPACE_HPP
