// Copyright 2026 The rmab Authors. All rights reserved.
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

// rmab: command line front end.
//
//   rmab simulate <config.json> [--runs N] [--horizon T] [--seed S] [--out DIR]
//   rmab scenario <name>        [--runs N] [--horizon T] [--seed S] [--out DIR]
//   rmab gaps <config.json>     [--horizon T]
//
// Exit codes: 0 success, 1 usage, 2 config error, 3 I/O error, 4 other.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rmab/rmab.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfigError = 2,
  kIoError = 3,
  kOtherError = 4,
};

struct Overrides {
  std::optional<std::uint64_t> runs;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  unsigned threads = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rmab::IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

rmab::SimulationConfig load_config(const std::string& path,
                                   const Overrides& o) {
  rmab::SimulationConfig config = rmab::parse_config(read_file(path));
  if (o.runs) config.runs = *o.runs;
  if (o.horizon) config.horizon = *o.horizon;
  if (o.seed) config.master_seed = *o.seed;
  try {
    rmab::validate(config);
  } catch (const std::invalid_argument& e) {
    throw rmab::ConfigError("<overrides>", e.what());
  }
  return config;
}

void report_files(const rmab::RunOutputs& outputs) {
  for (const auto& f : outputs.files) std::cout << f.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restless bandit sensing policies: simulation and regret analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rmab::kVersion));

  Overrides o;
  std::string config_path;
  std::string scenario;

  auto add_run_flags = [&o](CLI::App* sub) {
    sub->add_option("--runs", o.runs, "Number of independent runs");
    sub->add_option("--horizon", o.horizon, "Number of decisions per run");
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--out", o.out, "Output directory")->capture_default_str();
    sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  };

  auto* simulate = app.add_subcommand("simulate", "Run a config file");
  simulate->add_option("config", config_path, "JSON config")->required();
  add_run_flags(simulate);

  auto* run_scenario = app.add_subcommand("scenario", "Run a built-in scenario");
  run_scenario->add_option("name", scenario, "Scenario name")
      ->required()
      ->check(CLI::IsMember({"fig2_markov_slope", "fig3_markov_regret",
                             "fig4_bernoulli_regret"}));
  add_run_flags(run_scenario);

  auto* gaps = app.add_subcommand("gaps", "Print the per-band gap report");
  gaps->add_option("config", config_path, "JSON config")->required();
  gaps->add_option("--horizon", o.horizon, "Horizon for the count bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate) {
      report_files(rmab::run_simulation(load_config(config_path, o), o.out,
                                        o.threads));
    } else if (*run_scenario) {
      const auto preset = rmab::make_scenario(
          *rmab::parse_scenario_name(scenario),
          rmab::ScenarioOverrides{o.horizon, o.runs, o.seed});
      report_files(rmab::run_scenario(preset, o.out, o.threads));
    } else if (*gaps) {
      rmab::write_gap_csv(std::cout,
                          rmab::gap_report(load_config(config_path, o)));
    }
  } catch (const rmab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const rmab::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    // Overrides on built-in scenarios are validated when the preset is built.
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOtherError;
  }
  return kOk;
}
