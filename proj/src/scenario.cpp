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

#include "hovi/scenario.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "hovi/del_flow.hpp"
#include "hovi/discretization.hpp"
#include "hovi/format.hpp"
#include "hovi/models.hpp"
#include "hovi/order_analysis.hpp"
#include "hovi/regularized_bvp.hpp"

namespace hovi {

using nlohmann::json;

namespace {

// Object reader that remembers which keys were consumed, so leftovers can be
// reported as unknown.
class Fields {
 public:
  Fields(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_, "expected an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  [[nodiscard]] std::string at(const std::string& key) const { return where_ + "/" + key; }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    if (!has(key)) return required(key, fallback);
    const json& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(at(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(at(key), "must be finite");
    return x;
  }

  int integer(const std::string& key, std::optional<int> fallback = std::nullopt) {
    if (!has(key)) return required(key, fallback);
    const json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(at(key), "expected an integer");
    return v.get<int>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) throw ConfigError(at(key), "expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
    if (!has(key)) return required(key, fallback);
    const json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(at(key), "expected a string");
    return v.get<std::string>();
  }

  Eigen::VectorXd vector(const std::string& key, int n, bool optional_field = false) {
    if (!has(key)) {
      if (optional_field) return {};
      throw ConfigError(at(key), "missing required field");
    }
    const json& v = j_.at(key);
    if (v.is_number() && n == 1) return Eigen::VectorXd::Constant(1, v.get<double>());
    if (!v.is_array() || static_cast<int>(v.size()) != n) {
      throw ConfigError(at(key), "expected an array of " + std::to_string(n) + " numbers");
    }
    Eigen::VectorXd out(n);
    for (int i = 0; i < n; ++i) {
      if (!v[i].is_number()) throw ConfigError(at(key), "expected numbers");
      out(i) = v[i].get<double>();
    }
    return out;
  }

  std::vector<std::string> strings(const std::string& key, std::vector<std::string> fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_array() || v.empty()) throw ConfigError(at(key), "expected a non-empty array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
      if (!e.is_string()) throw ConfigError(at(key), "expected strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  Fields object(const std::string& key) {
    seen_.insert(key);
    return Fields(j_.at(key), at(key));
  }

  /// Throws on any key that was never asked for.
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(at(it.key()), "unknown field");
    }
  }

 private:
  template <typename T>
  T required(const std::string& key, const std::optional<T>& fallback) {
    if (!fallback) throw ConfigError(at(key), "missing required field");
    return *fallback;
  }

  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

bool valid_scheme(const std::string& name) {
  for (const auto& s : scheme_names()) {
    if (s == name) return true;
  }
  return false;
}

void check_kind(const ScenarioConfig& c, Command command, const std::string& where) {
  const bool ocp_kind = c.kind == ProblemKind::kOcpTwoLink || c.kind == ProblemKind::kOcpCustom;
  if ((command == Command::kOcp) != ocp_kind) {
    throw ConfigError(where + "/kind", "kind '" + to_string(c.kind) + "' does not fit the '" + to_string(command) +
                                           "' command");
  }
}

ScenarioConfig parse_one(const json& j, Command command, const std::string& where) {
  Fields f(j, where);
  ScenarioConfig c;
  c.name = f.string("name", std::string("scenario"));
  if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos || c.name[0] == '.') {
    throw ConfigError(f.at("name"), "must be a plain file stem");
  }
  try {
    c.kind = parse_kind(f.string("kind"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(f.at("kind"), e.what());
  }
  check_kind(c, command, where);

  if (c.kind == ProblemKind::kOcpTwoLink) {
    c.dimension = 2;
    if (f.has("dimension") && f.integer("dimension") != 2) throw ConfigError(f.at("dimension"), "the arm has dimension 2");
  } else {
    c.dimension = f.integer("dimension", 1);
    if (c.dimension < 1 || c.dimension > 64) throw ConfigError(f.at("dimension"), "must be in [1, 64]");
  }
  const int n = c.dimension;

  const std::string default_scheme = c.kind == ProblemKind::kOcpTwoLink ? "taylor_average_midpoint" : "taylor_average";
  c.scheme = f.string("scheme", default_scheme);
  if (!valid_scheme(c.scheme)) throw ConfigError(f.at("scheme"), "unknown scheme '" + c.scheme + "'");

  if (c.kind == ProblemKind::kCustomLagrangian) {
    if (!f.has("lagrangian")) throw ConfigError(f.at("lagrangian"), "missing required field");
    Fields m = f.object("lagrangian");
    c.lagrangian.model = m.string("model");
    c.lagrangian.stiffness = m.number("stiffness", 1.0);
    c.lagrangian.weight = m.number("weight", 1.0);
    m.finish();
    try {
      (void)make_model(c.lagrangian, n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(f.at("lagrangian") + "/model", e.what());
    }
  }

  if (c.kind == ProblemKind::kOcpCustom) {
    if (!f.has("mechanical")) throw ConfigError(f.at("mechanical"), "missing required field");
    Fields m = f.object("mechanical");
    c.mechanical.model = m.string("model");
    if (c.mechanical.model != "free_particle" && c.mechanical.model != "pendulum") {
      throw ConfigError(m.at("model"), "unknown mechanical model '" + c.mechanical.model + "'");
    }
    c.mechanical.mass = m.number("mass", 1.0);
    c.mechanical.length = m.number("length", 1.0);
    c.mechanical.gravity = m.number("gravity", 9.8);
    m.finish();
    if (!(c.mechanical.mass > 0 && c.mechanical.length > 0 && c.mechanical.gravity >= 0)) {
      throw ConfigError(f.at("mechanical"), "mass and length must be positive, gravity nonnegative");
    }
  }

  if (c.kind == ProblemKind::kOcpTwoLink) {
    if (f.has("twolink")) {
      Fields t = f.object("twolink");
      TwoLinkParams& p = c.twolink.params;
      p.m1 = t.number("m1", p.m1);
      p.m2 = t.number("m2", p.m2);
      p.l1 = t.number("l1", p.l1);
      p.l2 = t.number("l2", p.l2);
      p.J1 = t.number("J1", p.m1 * p.l1 * p.l1 / 3.0);
      p.J2 = t.number("J2", p.m2 * p.l2 * p.l2 / 3.0);
      p.g = t.number("g", p.g);
      c.twolink.penalty = t.boolean("penalty", false);
      c.twolink.penalty_slope = t.number("penalty_slope", 1000.0);
      c.twolink.penalty_delta = t.number("penalty_delta", 1e-6);
      t.finish();
      try {
        p.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(f.at("twolink"), e.what());
      }
      if (!(c.twolink.penalty_slope > 0 && c.twolink.penalty_delta > 0)) {
        throw ConfigError(f.at("twolink"), "penalty_slope and penalty_delta must be positive");
      }
    }
  }

  if (command != Command::kOrder) {
    if (!f.has("grid")) throw ConfigError(f.at("grid"), "missing required field");
    Fields g = f.object("grid");
    c.t0 = g.number("t0", 0.0);
    c.horizon = g.number("T");
    c.steps = g.integer("N");
    g.finish();
    if (!(c.horizon > 0.0)) throw ConfigError(g.at("T"), "must be positive");
    if (c.steps < 2 || c.steps > 1000000) throw ConfigError(g.at("N"), "must be in [2, 1e6]");
  }

  if (command == Command::kSimulate) {
    if (!f.has("initial")) throw ConfigError(f.at("initial"), "missing required field");
    Fields s = f.object("initial");
    c.q0 = s.vector("q0", n);
    c.v0 = s.vector("v0", n);
    c.q1 = s.vector("q1", n, true);
    c.v1 = s.vector("v1", n, true);
    c.a0 = s.vector("a0", n, true);
    c.j0 = s.vector("j0", n, true);
    s.finish();
    const bool second = c.q1.size() && c.v1.size();
    const bool jet = c.a0.size() && c.j0.size();
    if (second == jet || (c.q1.size() != c.v1.size()) || (c.a0.size() != c.j0.size())) {
      throw ConfigError(f.at("initial"), "give either (q1, v1) or (a0, j0) besides (q0, v0)");
    }
  } else if (command == Command::kBvp || command == Command::kOcp) {
    if (c.kind == ProblemKind::kOcpTwoLink && !f.has("boundary")) {
      c.q0 = c.twolink.start.head(2);
      c.v0 = c.twolink.start.tail(2);
      c.qN = c.twolink.end.head(2);
      c.vN = c.twolink.end.tail(2);
    } else {
      if (!f.has("boundary")) throw ConfigError(f.at("boundary"), "missing required field");
      Fields b = f.object("boundary");
      c.q0 = b.vector("q0", n);
      c.v0 = b.vector("v0", n);
      c.qN = b.vector("qN", n);
      c.vN = b.vector("vN", n);
      b.finish();
      if (c.kind == ProblemKind::kOcpTwoLink) {
        c.twolink.start << c.q0, c.v0;
        c.twolink.end << c.qN, c.vN;
      }
    }
  } else if (command == Command::kOrder) {
    if (!f.has("order")) throw ConfigError(f.at("order"), "missing required field");
    Fields o = f.object("order");
    c.order.schemes = o.strings("schemes", c.order.schemes);
    for (const auto& s : c.order.schemes) {
      if (!valid_scheme(s)) throw ConfigError(o.at("schemes"), "unknown scheme '" + s + "'");
    }
    c.order.h0 = o.number("h0", 0.4);
    c.order.count = o.integer("count", 4);
    if (!(c.order.h0 > 0.0)) throw ConfigError(o.at("h0"), "must be positive");
    if (c.order.count < 4 || c.order.count > 40) throw ConfigError(o.at("count"), "must be in [4, 40]");
    c.order.q0 = o.vector("q0", n);
    c.order.v0 = o.vector("v0", n);
    c.order.a0 = o.vector("a0", n);
    c.order.j0 = o.vector("j0", n);
    o.finish();
  }

  if (f.has("tolerances")) {
    Fields t = f.object("tolerances");
    c.step_tolerance = t.number("step", c.step_tolerance);
    c.path_tolerance = t.number("path", c.path_tolerance);
    c.max_iterations = t.integer("max_iterations", 0);
    t.finish();
    if (!(c.step_tolerance > 0 && c.path_tolerance > 0) || c.max_iterations < 0) {
      throw ConfigError(f.at("tolerances"), "tolerances must be positive");
    }
  }

  c.csv = c.name + ".csv";
  c.summary = c.name + ".summary.json";
  if (f.has("outputs")) {
    Fields o = f.object("outputs");
    c.csv = o.string("csv", c.csv);
    c.summary = o.string("summary", c.summary);
    o.finish();
    for (const auto* s : {&c.csv, &c.summary}) {
      if (s->empty() || s->find_first_of("/\\") != std::string::npos || (*s)[0] == '.') {
        throw ConfigError(f.at("outputs"), "output names must be plain file names");
      }
    }
  }
  f.finish();
  return c;
}

Jet jet1(const Eigen::VectorXd& q, const Eigen::VectorXd& v) { return Jet(q, {v}); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool is_spline_scheme(const std::string& scheme) {
  return scheme == "taylor_average" || scheme == "spline_exact";
}

// phi drift along a path, reported for the spline problems
double phi_drift(const Path& path) {
  const Eigen::VectorXd phi0 = spline_phi(Pair(path.states[0], path.states[1], path.grid.h()));
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < path.states.size(); ++i) {
    worst = std::max(worst, (spline_phi(Pair(path.states[i], path.states[i + 1], path.grid.h())) - phi0)
                                .lpNorm<Eigen::Infinity>());
  }
  return worst;
}

LagrangianModel scenario_lagrangian(const ScenarioConfig& c) {
  if (c.kind == ProblemKind::kSpline) return models::spline(c.dimension);
  return make_model(c.lagrangian, c.dimension);
}

ScenarioOutput run_simulate(const ScenarioConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const LagrangianModel lag = scenario_lagrangian(c);
  const DiscreteLagrangian ld = make_scheme(c.scheme, lag);
  const Gridd grid(c.t0, c.horizon / c.steps, c.steps);
  const Jet x0 = jet1(c.q0, c.v0);
  Jet x1 = c.q1.size() ? jet1(c.q1, c.v1) : seed_second_point(lag, Jet(c.q0, {c.v0, c.a0, c.j0}), grid.h());
  StepOptions so;
  so.tolerance = c.step_tolerance;
  if (c.max_iterations > 0) so.max_iterations = c.max_iterations;
  InvariantFn inv;
  if (c.kind == ProblemKind::kSpline) inv = spline_phi;
  const Path path = run(ld, x0, x1, grid, inv, so);

  ScenarioOutput out;
  out.name = c.name;
  out.files[c.csv] = path_csv(path);
  json& s = out.summary;
  double worst = 0.0;
  int iters = 0;
  for (const auto& d : path.diagnostics) {
    worst = std::max(worst, d.del_residual);
    iters = std::max(iters, d.newton_iterations);
  }
  s["max_del_residual"] = worst;
  s["max_newton_iterations"] = iters;
  if (c.kind == ProblemKind::kSpline && is_spline_scheme(c.scheme)) s["phi_drift"] = phi_drift(path);
  s["timing_seconds"] = seconds_since(t0);
  return out;
}

ScenarioOutput run_bvp(const ScenarioConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const LagrangianModel lag = scenario_lagrangian(c);
  const DiscreteLagrangian ld = make_scheme(c.scheme, lag);
  const Gridd grid(c.t0, c.horizon / c.steps, c.steps);
  PathOptions po;
  po.tolerance = c.path_tolerance;
  if (c.max_iterations > 0) po.max_iterations = c.max_iterations;
  const PathSolution sol = solve_path_bvp(ld, jet1(c.q0, c.v0), jet1(c.qN, c.vN), grid, {}, po);

  ScenarioOutput out;
  out.name = c.name;
  out.files[c.csv] = path_csv(sol.path);
  json& s = out.summary;
  s["residual"] = sol.residual;
  s["iterations"] = sol.iterations;
  s["action"] = sol.action;
  s["max_del_residual"] = max_del_residual(ld, sol.path);
  if (c.kind == ProblemKind::kSpline && is_spline_scheme(c.scheme)) s["phi_drift"] = phi_drift(sol.path);
  s["timing_seconds"] = seconds_since(t0);
  return out;
}

ScenarioOutput run_ocp(const ScenarioConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  PathOptions po = two_link_path_options();
  po.tolerance = c.path_tolerance;
  if (c.max_iterations > 0) po.max_iterations = c.max_iterations;

  TwoLinkOptions arm = c.twolink;
  arm.horizon = c.horizon;
  arm.steps = c.steps;
  auto build = [&]() {
    if (c.kind == ProblemKind::kOcpTwoLink) return two_link_problem(arm);
    const Jet a = jet1(c.q0, c.v0);
    const Jet b = jet1(c.qN, c.vN);
    if (c.mechanical.model == "free_particle") {
      return make_ocp("free_particle", c.dimension, models::FreeParticle{c.mechanical.mass}, QuadraticControlCost{}, a,
                      b, c.horizon, c.steps);
    }
    return make_ocp("pendulum", c.dimension,
                    models::Pendulum{c.mechanical.mass, c.mechanical.length, c.mechanical.gravity},
                    QuadraticControlCost{}, a, b, c.horizon, c.steps);
  };
  const OCProblem problem = build();
  std::vector<std::string> header;
  if (c.kind == ProblemKind::kOcpTwoLink) header = {"t", "theta1", "theta2", "dtheta1", "dtheta2", "u1", "u2"};
  OCSolution sol = c.kind == ProblemKind::kOcpTwoLink ? solve_two_link(arm, c.scheme, po) : solve_ocp(problem, c.scheme, po);
  // shift the time column to t0
  Path& path = sol.solution.path;
  path.grid = Gridd(c.t0, path.grid.h(), path.grid.steps());

  ScenarioOutput out;
  out.name = c.name;
  out.files[c.csv] = ocp_csv(sol, header);
  json& s = out.summary;
  s["cost"] = sol.cost;
  s["residual"] = sol.solution.residual;
  s["iterations"] = sol.solution.iterations;
  s["max_del_residual"] = max_del_residual(make_scheme(c.scheme, problem.lifted), path);
  const double endpoint = std::max((path.states.front().stacked() - problem.start.stacked()).lpNorm<Eigen::Infinity>(),
                                   (path.states.back().stacked() - problem.end.stacked()).lpNorm<Eigen::Infinity>());
  s["endpoint_error"] = endpoint;
  if (c.kind == ProblemKind::kOcpTwoLink) {
    double lo = path.states.front().q()(1);
    double hi = lo;
    for (const auto& x : path.states) {
      lo = std::min(lo, x.q()(1));
      hi = std::max(hi, x.q()(1));
    }
    s["theta2_min"] = lo;
    s["theta2_max"] = hi;
    s["penalty"] = c.twolink.penalty;
  }
  s["timing_seconds"] = seconds_since(t0);
  return out;
}

ScenarioOutput run_order(const ScenarioConfig& c, int workers) {
  const auto t0 = std::chrono::steady_clock::now();
  const LagrangianModel lag = scenario_lagrangian(c);
  BoundaryFamily family;
  std::optional<DiscreteLagrangian> exact;
  if (c.kind == ProblemKind::kSpline) {
    family = cubic_family(c.order.q0, c.order.v0, c.order.a0, c.order.j0);
    exact = spline_exact(c.dimension);
  } else {
    family = flow_family(lag, Jet(c.order.q0, {c.order.v0, c.order.a0, c.order.j0}));
    exact = exact_discrete_lagrangian(lag, ExactMethod::kRegularized);
  }
  const std::vector<double> hs = halving_sequence(c.order.h0, c.order.count);
  ScenarioOutput out;
  out.name = c.name;
  json reports = json::array();
  for (const auto& scheme : c.order.schemes) {
    const OrderReport rep = estimate_order(make_scheme(scheme, lag), *exact, family, hs, workers);
    out.files[c.name + "." + scheme + ".csv"] = rep.to_csv();
    reports.push_back(json::parse(rep.to_json()));
  }
  out.summary["reports"] = reports;
  out.summary["timing_seconds"] = seconds_since(t0);
  return out;
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "simulate") return Command::kSimulate;
  if (name == "bvp") return Command::kBvp;
  if (name == "ocp") return Command::kOcp;
  if (name == "order") return Command::kOrder;
  throw std::invalid_argument("unknown command '" + name + "'");
}

std::string to_string(Command command) {
  switch (command) {
    case Command::kSimulate: return "simulate";
    case Command::kBvp: return "bvp";
    case Command::kOcp: return "ocp";
    case Command::kOrder: return "order";
  }
  return "?";
}

ProblemKind parse_kind(const std::string& name) {
  if (name == "spline") return ProblemKind::kSpline;
  if (name == "custom-lagrangian") return ProblemKind::kCustomLagrangian;
  if (name == "ocp-twolink") return ProblemKind::kOcpTwoLink;
  if (name == "ocp-custom") return ProblemKind::kOcpCustom;
  throw std::invalid_argument("unknown kind '" + name + "' (spline, custom-lagrangian, ocp-twolink, ocp-custom)");
}

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kSpline: return "spline";
    case ProblemKind::kCustomLagrangian: return "custom-lagrangian";
    case ProblemKind::kOcpTwoLink: return "ocp-twolink";
    case ProblemKind::kOcpCustom: return "ocp-custom";
  }
  return "?";
}

LagrangianModel make_model(const ModelSpec& spec, int n) {
  if (spec.model == "spline") return models::spline(n);
  if (spec.model == "spline_potential") return models::spline_potential(n, spec.stiffness);
  if (spec.model == "spline_kinetic") return models::spline_kinetic(n, spec.weight);
  if (spec.model == "weighted_spline") return make_lagrangian("weighted_spline", n, models::WeightedSpline{});
  throw std::invalid_argument("unknown model '" + spec.model +
                              "' (spline, spline_potential, spline_kinetic, weighted_spline)");
}

std::vector<ScenarioConfig> parse_config(const json& root, Command command) {
  std::vector<ScenarioConfig> out;
  if (root.is_object() && root.contains("scenarios")) {
    if (root.size() != 1) {
      for (auto it = root.begin(); it != root.end(); ++it) {
        if (it.key() != "scenarios") throw ConfigError("/" + it.key(), "unknown field");
      }
    }
    const json& list = root.at("scenarios");
    if (!list.is_array() || list.empty()) throw ConfigError("/scenarios", "expected a non-empty array");
    std::set<std::string> names;
    for (std::size_t i = 0; i < list.size(); ++i) {
      out.push_back(parse_one(list[i], command, "/scenarios/" + std::to_string(i)));
      if (!names.insert(out.back().name).second) {
        throw ConfigError("/scenarios/" + std::to_string(i) + "/name", "duplicate scenario name");
      }
    }
  } else {
    out.push_back(parse_one(root, command, ""));
  }
  std::set<std::string> files;
  for (const auto& c : out) {
    for (const auto& f : {c.csv, c.summary}) {
      if (!files.insert(f).second) throw ConfigError("", "two outputs share the file name '" + f + "'");
    }
  }
  return out;
}

std::string path_csv(const Path& path) {
  const int n = path.states.empty() ? 0 : path.states.front().dim();
  std::ostringstream out;
  out << 't';
  for (int i = 0; i < n; ++i) out << ",q" << i + 1;
  for (int i = 0; i < n; ++i) out << ",v" << i + 1;
  out << '\n';
  for (std::size_t k = 0; k < path.states.size(); ++k) {
    out << format_double(path.grid.node(static_cast<int>(k)));
    for (int i = 0; i < n; ++i) out << ',' << format_double(path.states[k].q()(i));
    for (int i = 0; i < n; ++i) out << ',' << format_double(path.states[k].deriv(1)(i));
    out << '\n';
  }
  return out.str();
}

ScenarioOutput run_scenario(const ScenarioConfig& config, Command command, std::uint64_t seed) {
  ScenarioOutput out;
  switch (command) {
    case Command::kSimulate: out = run_simulate(config); break;
    case Command::kBvp: out = run_bvp(config); break;
    case Command::kOcp: out = run_ocp(config); break;
    case Command::kOrder: out = run_order(config, 1); break;
  }
  json head;
  head["name"] = config.name;
  head["command"] = to_string(command);
  head["kind"] = to_string(config.kind);
  if (command != Command::kOrder) {
    head["scheme"] = config.scheme;
    head["grid"] = {{"t0", config.t0}, {"T", config.horizon}, {"N", config.steps}};
  }
  head["seed"] = seed;
  head.update(out.summary);
  out.summary = head;
  std::vector<std::string> names;
  for (const auto& [k, v] : out.files) names.push_back(k);
  out.summary["files"] = names;
  return out;
}

}  // namespace hovi
