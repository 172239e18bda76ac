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

#ifndef HOVI_SCENARIO_HPP
#define HOVI_SCENARIO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "hovi/lagrangian.hpp"
#include "hovi/optimal_control.hpp"

namespace hovi {

/// Malformed or inconsistent configuration. `where` is a JSON-pointer-like
/// location of the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
  [[nodiscard]] const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

enum class Command { kSimulate, kBvp, kOcp, kOrder };
Command parse_command(const std::string& name);
std::string to_string(Command command);

enum class ProblemKind { kSpline, kCustomLagrangian, kOcpTwoLink, kOcpCustom };
ProblemKind parse_kind(const std::string& name);
std::string to_string(ProblemKind kind);

struct ModelSpec {
  std::string model = "spline";
  double stiffness = 1.0;
  double weight = 1.0;
};

struct MechanicalSpec {
  std::string model = "free_particle";
  double mass = 1.0;
  double length = 1.0;
  double gravity = 9.8;
};

struct OrderSpec {
  std::vector<std::string> schemes{"taylor_average", "midpoint_difference"};
  double h0 = 0.4;
  int count = 4;
  /// cubic q0 + v0 t + a0 t^2/2 + j0 t^3/6 (spline) or the flow from (q0, v0, a0, j0)
  Eigen::VectorXd q0, v0, a0, j0;
};

struct ScenarioConfig {
  std::string name = "scenario";
  ProblemKind kind = ProblemKind::kSpline;
  std::string scheme;
  int dimension = 1;
  ModelSpec lagrangian;
  MechanicalSpec mechanical;
  TwoLinkOptions twolink;

  double t0 = 0.0;
  double horizon = 1.0;
  int steps = 10;

  /// boundary (bvp, ocp)
  Eigen::VectorXd q0, v0, qN, vN;
  /// second state (simulate); empty means seed it from a0, j0
  Eigen::VectorXd q1, v1, a0, j0;

  double step_tolerance = 1e-12;
  double path_tolerance = 1e-8;
  int max_iterations = 0;

  OrderSpec order;

  std::string csv;
  std::string summary;
};

/// Parses one scenario object or a {"scenarios": [...]} batch, rejecting
/// unknown fields and values that do not fit the command.
std::vector<ScenarioConfig> parse_config(const nlohmann::json& root, Command command);

/// Built-in continuous Lagrangian by name (spline, spline_potential,
/// spline_kinetic, weighted_spline).
LagrangianModel make_model(const ModelSpec& spec, int n);

struct ScenarioOutput {
  std::string name;
  /// file name -> contents
  std::map<std::string, std::string> files;
  nlohmann::json summary;
};

/// Runs one validated scenario. Solver failures propagate as SolverError.
ScenarioOutput run_scenario(const ScenarioConfig& config, Command command, std::uint64_t seed);

/// Text for trajectory tables: t, q1..qn, v1..vn.
std::string path_csv(const Path& path);

}  // namespace hovi

#endif  // HOVI_SCENARIO_HPP
