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

#include "doctest.h"
#include "hovi/checks.hpp"
#include "hovi/scenario.hpp"

using namespace hovi;
using nlohmann::json;

namespace {

json spline_bvp() {
  return json::parse(R"({
    "name": "s", "kind": "spline", "dimension": 1,
    "grid": {"T": 1.0, "N": 20},
    "boundary": {"q0": [0], "v0": [0], "qN": [1], "vN": [0]}
  })");
}

std::string config_error(const json& j, Command c) {
  try {
    parse_config(j, c);
  } catch (const ConfigError& e) {
    return e.where();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("config validation") {
  CHECK(parse_config(spline_bvp(), Command::kBvp).size() == 1);

  json j = spline_bvp();
  j["colour"] = "red";
  CHECK(config_error(j, Command::kBvp) == "/colour");
  j = spline_bvp();
  j["grid"]["dt"] = 0.1;
  CHECK(config_error(j, Command::kBvp) == "/grid/dt");
  j = spline_bvp();
  j["grid"]["N"] = 1;
  CHECK(config_error(j, Command::kBvp) == "/grid/N");
  j = spline_bvp();
  j["boundary"]["q0"] = json::array({0, 1});
  CHECK(config_error(j, Command::kBvp) == "/boundary/q0");
  j = spline_bvp();
  j["scheme"] = "euler";
  CHECK(config_error(j, Command::kBvp) == "/scheme");
  j = spline_bvp();
  j.erase("grid");
  CHECK(config_error(j, Command::kBvp) == "/grid");
  CHECK(config_error(spline_bvp(), Command::kOcp) == "/kind");
  j = spline_bvp();
  j["name"] = "../x";
  CHECK(config_error(j, Command::kBvp) == "/name");

  json batch = {{"scenarios", json::array({spline_bvp(), spline_bvp()})}};
  CHECK(config_error(batch, Command::kBvp) == "/scenarios/1/name");
  batch["scenarios"][1]["name"] = "t";
  CHECK(parse_config(batch, Command::kBvp).size() == 2);

  json arm = {{"kind", "ocp-twolink"}, {"grid", {{"T", 10.0}, {"N", 50}}}, {"twolink", {{"m1", -1.0}}}};
  CHECK(config_error(arm, Command::kOcp) == "/twolink");
  arm["twolink"] = {{"penalty", true}};
  const auto parsed = parse_config(arm, Command::kOcp);
  CHECK(parsed[0].scheme == "taylor_average_midpoint");
  CHECK(parsed[0].twolink.penalty);

  json sim = {{"kind", "spline"}, {"grid", {{"T", 1.0}, {"N", 10}}}, {"initial", {{"q0", 0}, {"v0", 1}}}};
  CHECK(config_error(sim, Command::kSimulate) == "/initial");
  sim["initial"]["a0"] = 0.0;
  sim["initial"]["j0"] = 1.0;
  CHECK(parse_config(sim, Command::kSimulate).size() == 1);
}

TEST_CASE("scenario runs") {
  const auto cfg = parse_config(spline_bvp(), Command::kBvp)[0];
  const ScenarioOutput a = run_scenario(cfg, Command::kBvp, 3);
  const ScenarioOutput b = run_scenario(cfg, Command::kBvp, 3);
  CHECK(a.files.at("s.csv") == b.files.at("s.csv"));
  CHECK(a.files.at("s.csv").rfind("t,q1,v1\n0,0,0\n", 0) == 0);
  CHECK(a.summary.at("residual").get<double>() <= 1e-8);
  CHECK(a.summary.at("seed").get<std::uint64_t>() == 3);

  json sim = {{"name", "sim"},
              {"kind", "custom-lagrangian"},
              {"lagrangian", {{"model", "spline_kinetic"}, {"weight", 2.0}}},
              {"grid", {{"T", 1.0}, {"N", 10}}},
              {"initial", {{"q0", 0}, {"v0", 1}, {"a0", 0}, {"j0", 0.5}}}};
  const ScenarioOutput s = run_scenario(parse_config(sim, Command::kSimulate)[0], Command::kSimulate, 0);
  CHECK(s.summary.at("max_del_residual").get<double>() <= 1e-9);
}

TEST_CASE("check suites") {
  CHECK_THROWS_AS(run_checks("nope", 0), std::invalid_argument);
  for (const char* suite : {"phi", "symplectic", "order", "spline-exactness"}) {
    for (const auto& l : run_checks(suite, 5)) {
      CAPTURE(l.text());
      CHECK(l.pass);
    }
  }
}
