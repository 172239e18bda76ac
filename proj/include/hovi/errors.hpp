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

#ifndef HOVI_ERRORS_HPP
#define HOVI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hovi {

enum class SolverFailure {
  kNoConvergence,
  kSingularHessian,
  kSingularWd,
  kSingularKKT,
};

std::string to_string(SolverFailure failure);

/// Raised by the iterative solvers. Carries the failure kind, the last
/// residual norm and, for trajectory-level solves, the failing step index.
class SolverError : public std::runtime_error {
 public:
  SolverError(SolverFailure kind, const std::string& what, double residual = -1.0,
              int iterations = -1, int step_index = -1);

  [[nodiscard]] SolverFailure kind() const noexcept { return kind_; }
  [[nodiscard]] double residual() const noexcept { return residual_; }
  [[nodiscard]] int iterations() const noexcept { return iterations_; }
  [[nodiscard]] int step_index() const noexcept { return step_index_; }

  /// Same error re-tagged with the index of the step that failed.
  [[nodiscard]] SolverError at_step(int index) const;

 private:
  SolverFailure kind_;
  double residual_;
  int iterations_;
  int step_index_;
};

}  // namespace hovi

#endif  // HOVI_ERRORS_HPP
