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

// hovi command line: simulate, bvp, ocp, order, check.
//
// Exit codes: 0 success, 1 a check failed, 2 bad usage or malformed config,
// 3 solver failure. Errors are printed to stdout as one JSON object and no
// output file is written unless every scenario of the run succeeded.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hovi/checks.hpp"
#include "hovi/errors.hpp"
#include "hovi/scenario.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Common {
  std::string config;
  std::string out = ".";
  int workers = 1;
  std::uint64_t seed = 0;
};

int fail(int code, const std::string& kind, const std::string& message, json extra = json::object()) {
  json j = {{"status", "error"}, {"error", kind}, {"message", message}};
  j.update(extra);
  std::cout << j.dump() << std::endl;
  return code;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hovi::ConfigError("", "cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw hovi::ConfigError("", std::string("invalid JSON: ") + e.what());
  }
}

// Writes through a temporary name so readers never see half a file.
void write_file(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

int run_command(hovi::Command command, const Common& opts) {
  std::vector<hovi::ScenarioConfig> configs;
  try {
    configs = hovi::parse_config(load_json(opts.config), command);
  } catch (const hovi::ConfigError& e) {
    return fail(2, "config", e.what(), {{"where", e.where()}});
  }
  if (opts.workers < 1) return fail(2, "usage", "--workers must be at least 1");

  std::vector<hovi::ScenarioOutput> outputs(configs.size());
  std::vector<std::string> errors(configs.size());
  std::vector<json> error_info(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        outputs[i] = hovi::run_scenario(configs[i], command, opts.seed);
      } catch (const hovi::SolverError& e) {
        errors[i] = e.what();
        error_info[i] = {{"scenario", configs[i].name}, {"message", e.what()}, {"failure", hovi::to_string(e.kind())},
                         {"residual", e.residual()}, {"iterations", e.iterations()}, {"step", e.step_index()}};
      } catch (const std::exception& e) {
        errors[i] = e.what();
        error_info[i] = {{"scenario", configs[i].name}, {"message", e.what()}, {"failure", "error"}};
      }
    }
  };
  const int threads = std::min<int>(opts.workers, static_cast<int>(configs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json failures = json::array();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (!errors[i].empty()) failures.push_back(error_info[i]);
  }
  if (!failures.empty()) return fail(3, "solver", failures[0]["message"].get<std::string>(), {{"failures", failures}});

  try {
    const fs::path dir(opts.out);
    fs::create_directories(dir);
    json index = json::array();
    for (std::size_t i = 0; i < configs.size(); ++i) {
      for (const auto& [name, text] : outputs[i].files) write_file(dir / name, text);
      write_file(dir / configs[i].summary, outputs[i].summary.dump(2) + "\n");
      index.push_back(outputs[i].summary);
    }
    std::cout << json({{"status", "ok"}, {"scenarios", index}}).dump() << std::endl;
  } catch (const std::exception& e) {
    return fail(3, "io", e.what());
  }
  return 0;
}

int run_check(const std::string& suite, const Common& opts) {
  std::vector<hovi::CheckLine> lines;
  try {
    lines = hovi::run_checks(suite, opts.seed);
  } catch (const std::invalid_argument& e) {
    return fail(2, "usage", e.what());
  } catch (const std::exception& e) {
    return fail(3, "solver", e.what());
  }
  bool ok = true;
  for (const auto& l : lines) {
    std::cout << l.text() << "\n";
    ok = ok && l.pass;
  }
  std::cout << (ok ? "PASS" : "FAIL") << " " << suite << " (" << lines.size() << " checks)" << std::endl;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hovi: higher-order variational integrators"};
  app.require_subcommand(1);
  Common opts;
  std::string suite = "all";

  auto add_common = [&](CLI::App* sub, bool need_config) {
    auto* c = sub->add_option("--config", opts.config, "scenario JSON file");
    if (need_config) c->required();
    sub->add_option("--out", opts.out, "output directory")->capture_default_str();
    sub->add_option("--workers", opts.workers, "scenarios run concurrently")->capture_default_str();
    sub->add_option("--seed", opts.seed, "seed for randomized checks")->capture_default_str();
  };
  for (const char* name : {"simulate", "bvp", "ocp", "order"}) {
    add_common(app.add_subcommand(name, std::string("run ") + name + " scenarios"), true);
  }
  auto* check = app.add_subcommand("check", "run invariant suites");
  add_common(check, false);
  std::string suites;
  for (const auto& s : hovi::check_suite_names()) suites += (suites.empty() ? "" : ", ") + s;
  check->add_option("suite", suite, "one of: " + suites)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, "usage", e.what());
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub == check) return run_check(suite, opts);
  return run_command(hovi::parse_command(sub->get_name()), opts);
}
