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

// Built-in five-band scenarios.

#ifndef RMAB_SCENARIOS_HPP_
#define RMAB_SCENARIOS_HPP_

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rmab/env.hpp"
#include "rmab/policies.hpp"
#include "rmab/sim.hpp"

namespace rmab {

enum class ScenarioName { kFig2MarkovSlope, kFig3MarkovRegret, kFig4BernoulliRegret };

inline constexpr std::array<std::string_view, 3> kScenarioNames = {
    "fig2_markov_slope", "fig3_markov_regret", "fig4_bernoulli_regret"};

inline std::string_view scenario_name(ScenarioName name) {
  return kScenarioNames[static_cast<std::size_t>(name)];
}

inline std::optional<ScenarioName> parse_scenario_name(std::string_view text) {
  for (std::size_t i = 0; i < kScenarioNames.size(); ++i) {
    if (kScenarioNames[i] == text) return static_cast<ScenarioName>(i);
  }
  return std::nullopt;
}

// Band parameters shared by the Markov scenarios.
inline constexpr std::array<double, 5> kMarkovP10 = {0.1, 0.1, 0.5, 0.1, 0.1};
inline constexpr std::array<double, 5> kMarkovP01 = {0.2, 0.3, 0.1, 0.4, 0.5};
// Idle probabilities of the Bernoulli scenario.
inline constexpr std::array<double, 5> kBernoulliP0 = {0.3, 0.36, 0.17, 0.25, 0.33};
inline constexpr double kRateIdle = 1.0;
inline constexpr double kRateBusy = 0.1;
inline constexpr double kFig3DseeD = 10.0;

inline constexpr TimeIndex kDefaultHorizon = 100000;
inline constexpr std::uint64_t kDefaultRuns = 1000;
inline constexpr std::uint64_t kDefaultSeed = 2012;

struct ScenarioOverrides {
  std::optional<TimeIndex> horizon;
  std::optional<std::uint64_t> runs;
  std::optional<std::uint64_t> seed;
};

struct LabeledConfig {
  std::string label;  // output file stem, e.g. "proposed"
  SimulationConfig config;
};

struct ScenarioPreset {
  ScenarioName name;
  std::vector<LabeledConfig> configs;
  bool emits_slope = false;
};

inline std::vector<BandModel> markov_scenario_bands() {
  std::vector<BandModel> bands;
  for (std::size_t n = 0; n < kMarkovP10.size(); ++n) {
    bands.push_back(BandModel::markov(kMarkovP10[n], kMarkovP01[n], kRateIdle,
                                      kRateBusy, InitMode::kStationary));
  }
  return bands;
}

inline std::vector<BandModel> bernoulli_scenario_bands() {
  std::vector<BandModel> bands;
  for (double p0 : kBernoulliP0) {
    bands.push_back(
        BandModel::bernoulli(p0, kRateIdle, kRateBusy, InitMode::kStationary));
  }
  return bands;
}

/// Every policy of a scenario shares the master seed, so all policies see
/// the same band trajectories in run i.
inline ScenarioPreset make_scenario(ScenarioName name,
                                    const ScenarioOverrides& overrides = {}) {
  auto base = [&](std::vector<BandModel> bands, PolicyKind policy) {
    SimulationConfig c;
    c.bands = std::move(bands);
    c.policy = policy;
    c.horizon = overrides.horizon.value_or(kDefaultHorizon);
    c.runs = overrides.runs.value_or(kDefaultRuns);
    c.master_seed = overrides.seed.value_or(kDefaultSeed);
    validate(c);
    return c;
  };
  ScenarioPreset preset{name, {}, false};
  switch (name) {
    case ScenarioName::kFig2MarkovSlope:
      preset.emits_slope = true;
      preset.configs.push_back(
          {"proposed", base(markov_scenario_bands(), PolicyKind::proposed())});
      break;
    case ScenarioName::kFig3MarkovRegret:
      preset.configs.push_back(
          {"proposed", base(markov_scenario_bands(), PolicyKind::proposed())});
      preset.configs.push_back(
          {"ucb1", base(markov_scenario_bands(), PolicyKind::ucb1())});
      preset.configs.push_back(
          {"dsee", base(markov_scenario_bands(),
                        PolicyKind::dsee(DseeBudget::constant(kFig3DseeD)))});
      break;
    case ScenarioName::kFig4BernoulliRegret:
      preset.configs.push_back(
          {"proposed", base(bernoulli_scenario_bands(), PolicyKind::proposed())});
      preset.configs.push_back(
          {"ucb1", base(bernoulli_scenario_bands(), PolicyKind::ucb1())});
      preset.configs.push_back(
          {"dsee", base(bernoulli_scenario_bands(),
                        PolicyKind::dsee(DseeBudget::log_time()))});
      break;
  }
  return preset;
}

}  // namespace rmab

#endif  // RMAB_SCENARIOS_HPP_
