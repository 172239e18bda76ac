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

#include "hovi/errors.hpp"

namespace hovi {

std::string to_string(SolverFailure failure) {
  switch (failure) {
    case SolverFailure::kNoConvergence:
      return "NoConvergence";
    case SolverFailure::kSingularHessian:
      return "SingularHessian";
    case SolverFailure::kSingularWd:
      return "SingularWd";
    case SolverFailure::kSingularKKT:
      return "SingularKKT";
  }
  return "Unknown";
}

SolverError::SolverError(SolverFailure kind, const std::string& what, double residual,
                         int iterations, int step_index)
    : std::runtime_error(to_string(kind) + ": " + what),
      kind_(kind),
      residual_(residual),
      iterations_(iterations),
      step_index_(step_index) {}

SolverError SolverError::at_step(int index) const {
  std::string msg = what();
  const std::string prefix = to_string(kind_) + ": ";
  if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
  return SolverError(kind_, msg + " (step " + std::to_string(index) + ")", residual_,
                     iterations_, index);
}

}  // namespace hovi
