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

#ifndef HOVI_CHECKS_HPP
#define HOVI_CHECKS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace hovi {

/// One measured quantity of a suite against its bound.
struct CheckLine {
  std::string suite;
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  /// true: value <= bound passes; false: value >= bound passes
  bool upper = true;
  bool pass = false;
  std::string note;

  [[nodiscard]] std::string text() const;
};

/// spline-exactness, theorem41, order, phi, symplectic, oracles, all.
std::vector<std::string> check_suite_names();

/// Runs a suite with randomized states drawn from `seed`. Throws
/// std::invalid_argument for an unknown suite.
std::vector<CheckLine> run_checks(const std::string& suite, std::uint64_t seed);

}  // namespace hovi

#endif  // HOVI_CHECKS_HPP
