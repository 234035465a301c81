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

// JSON form of SimulationConfig.
//
//   {
//     "bands": [
//       {"kind": "markov", "p10": 0.1, "p01": 0.2,
//        "r_idle": 1.0, "r_busy": 0.1, "init": "stationary"},
//       {"kind": "bernoulli", "p_idle": 0.3, "r_idle": 1.0, "r_busy": 0.1}
//     ],
//     "policy": {"kind": "dsee", "d": 10},
//     "horizon": 100000,
//     "runs": 1000,
//     "seed": 2012,
//     "grid": {"points_per_decade": 200},
//     "record_choices": false
//   }
//
// policy.kind is one of proposed, ucb1, dsee, oracle. dsee takes "d" as a
// non-negative number or the string "ln_t". oracle takes an optional 1-based
// "arm" (default: the band with the highest mean). band.init is one of
// stationary (default), idle, busy. grid and record_choices are optional.
// Unknown keys are rejected.

#ifndef RMAB_CONFIG_HPP_
#define RMAB_CONFIG_HPP_

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rmab/env.hpp"
#include "rmab/policies.hpp"
#include "rmab/sim.hpp"

namespace rmab {

/// A config document violates the schema. what() starts with the path of
/// the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(field) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

namespace detail {

using nlohmann::json;

inline void reject_unknown_keys(const json& obj, const std::string& path,
                                std::initializer_list<std::string_view> known) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || item.key() == k;
    if (!ok) {
      throw ConfigError(path.empty() ? item.key() : path + "." + item.key(),
                        "unknown field");
    }
  }
}

inline const json& require(const json& obj, const std::string& path,
                           const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ConfigError(path.empty() ? key : path + "." + key,
                      "missing required field");
  }
  return *it;
}

inline std::string join(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

inline double get_probability(const json& obj, const std::string& path,
                              const char* key) {
  const json& v = require(obj, path, key);
  if (!v.is_number()) throw ConfigError(join(path, key), "must be a number");
  const double p = v.get<double>();
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError(join(path, key),
                      "must be in [0,1], got " + v.dump());
  }
  return p;
}

inline std::uint64_t get_unsigned(const json& v, const std::string& path,
                                  bool positive) {
  // Non-negative integer literals parse as number_unsigned.
  if (!v.is_number_unsigned()) {
    throw ConfigError(path, positive ? "must be a positive integer"
                                     : "must be a non-negative integer");
  }
  const auto value = v.get<std::uint64_t>();
  if (positive && value == 0) throw ConfigError(path, "must be a positive integer");
  return value;
}

inline BandModel parse_band(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "must be an object");
  const json& kind = require(j, path, "kind");
  if (!kind.is_string()) throw ConfigError(path + ".kind", "must be a string");
  BandModel band;
  const std::string k = kind.get<std::string>();
  if (k == "bernoulli") {
    reject_unknown_keys(j, path, {"kind", "p_idle", "r_idle", "r_busy", "init"});
    band.kind = OccupancyKind::kBernoulli;
    band.p_idle = get_probability(j, path, "p_idle");
  } else if (k == "markov") {
    reject_unknown_keys(j, path, {"kind", "p10", "p01", "r_idle", "r_busy", "init"});
    band.kind = OccupancyKind::kMarkov;
    band.p10 = get_probability(j, path, "p10");
    band.p01 = get_probability(j, path, "p01");
    if (!(band.p10 + band.p01 > 0.0)) {
      throw ConfigError(path, "p10 + p01 must be > 0 (degenerate chain)");
    }
  } else {
    throw ConfigError(path + ".kind", "must be \"bernoulli\" or \"markov\"");
  }
  band.r_idle = get_probability(j, path, "r_idle");
  band.r_busy = get_probability(j, path, "r_busy");
  if (auto it = j.find("init"); it != j.end()) {
    const std::string mode = it->is_string() ? it->get<std::string>() : "";
    if (mode == "stationary") {
      band.init = InitMode::kStationary;
    } else if (mode == "idle") {
      band.init = InitMode::kFixedIdle;
    } else if (mode == "busy") {
      band.init = InitMode::kFixedBusy;
    } else {
      throw ConfigError(path + ".init",
                        "must be \"stationary\", \"idle\" or \"busy\"");
    }
  }
  return band;
}

inline PolicyKind parse_policy(const json& j, std::size_t n_arms) {
  const std::string path = "policy";
  if (!j.is_object()) throw ConfigError(path, "must be an object");
  const json& kind = require(j, path, "kind");
  const std::string k = kind.is_string() ? kind.get<std::string>() : "";
  if (k == "proposed") {
    reject_unknown_keys(j, path, {"kind"});
    return PolicyKind::proposed();
  }
  if (k == "ucb1") {
    reject_unknown_keys(j, path, {"kind"});
    return PolicyKind::ucb1();
  }
  if (k == "dsee") {
    reject_unknown_keys(j, path, {"kind", "d"});
    const json& d = require(j, path, "d");
    if (d.is_string() && d.get<std::string>() == "ln_t") {
      return PolicyKind::dsee(DseeBudget::log_time());
    }
    if (!d.is_number() || !(d.get<double>() >= 0.0)) {
      throw ConfigError("policy.d", "must be a number >= 0 or \"ln_t\"");
    }
    return PolicyKind::dsee(DseeBudget::constant(d.get<double>()));
  }
  if (k == "oracle") {
    reject_unknown_keys(j, path, {"kind", "arm"});
    auto it = j.find("arm");
    if (it == j.end()) return PolicyKind::oracle();
    const std::uint64_t arm = get_unsigned(*it, "policy.arm", true);
    if (arm > n_arms) {
      throw ConfigError("policy.arm", "must be in [1," + std::to_string(n_arms) +
                                          "], got " + std::to_string(arm));
    }
    return PolicyKind::oracle(static_cast<std::size_t>(arm - 1));
  }
  throw ConfigError("policy.kind",
                    "must be one of \"proposed\", \"ucb1\", \"dsee\", \"oracle\"");
}

inline json band_to_json(const BandModel& b) {
  json j;
  if (b.kind == OccupancyKind::kBernoulli) {
    j["kind"] = "bernoulli";
    j["p_idle"] = b.p_idle;
  } else {
    j["kind"] = "markov";
    j["p10"] = b.p10;
    j["p01"] = b.p01;
  }
  j["r_idle"] = b.r_idle;
  j["r_busy"] = b.r_busy;
  switch (b.init) {
    case InitMode::kStationary:
      j["init"] = "stationary";
      break;
    case InitMode::kFixedIdle:
      j["init"] = "idle";
      break;
    case InitMode::kFixedBusy:
      j["init"] = "busy";
      break;
  }
  return j;
}

inline json policy_to_json(const PolicyKind& p) {
  json j;
  j["kind"] = policy_name(p.type);
  if (p.type == PolicyType::kDsee) {
    if (p.dsee_budget.kind == DseeBudget::Kind::kLogTime) {
      j["d"] = "ln_t";
    } else {
      j["d"] = p.dsee_budget.value;
    }
  }
  if (p.type == PolicyType::kOracle && p.oracle_arm) {
    j["arm"] = *p.oracle_arm + 1;
  }
  return j;
}

}  // namespace detail

inline nlohmann::json config_to_json(const SimulationConfig& config) {
  nlohmann::json j;
  j["bands"] = nlohmann::json::array();
  for (const auto& b : config.bands) j["bands"].push_back(detail::band_to_json(b));
  j["policy"] = detail::policy_to_json(config.policy);
  j["horizon"] = config.horizon;
  j["runs"] = config.runs;
  j["seed"] = config.master_seed;
  j["grid"] = {{"points_per_decade", config.grid.points_per_decade}};
  if (config.record_choices) j["record_choices"] = *config.record_choices;
  return j;
}

inline std::string dump_config(const SimulationConfig& config) {
  return config_to_json(config).dump(2) + "\n";
}

inline SimulationConfig config_from_json(const nlohmann::json& j) {
  using detail::require;
  if (!j.is_object()) throw ConfigError("<root>", "must be an object");
  detail::reject_unknown_keys(
      j, "", {"bands", "policy", "horizon", "runs", "seed", "grid", "record_choices"});
  SimulationConfig c;
  const auto& bands = require(j, "", "bands");
  if (!bands.is_array() || bands.empty()) {
    throw ConfigError("bands", "must be a non-empty array");
  }
  for (std::size_t n = 0; n < bands.size(); ++n) {
    c.bands.push_back(
        detail::parse_band(bands[n], "bands[" + std::to_string(n) + "]"));
  }
  c.policy = detail::parse_policy(require(j, "", "policy"), c.bands.size());
  c.horizon = detail::get_unsigned(require(j, "", "horizon"), "horizon", true);
  if (c.horizon < c.bands.size()) {
    throw ConfigError("horizon", "must be >= number of bands (" +
                                     std::to_string(c.bands.size()) + ")");
  }
  c.runs = detail::get_unsigned(require(j, "", "runs"), "runs", true);
  c.master_seed = detail::get_unsigned(require(j, "", "seed"), "seed", false);
  if (auto it = j.find("grid"); it != j.end()) {
    if (!it->is_object()) throw ConfigError("grid", "must be an object");
    detail::reject_unknown_keys(*it, "grid", {"points_per_decade"});
    const auto ppd = detail::get_unsigned(
        require(*it, "grid", "points_per_decade"), "grid.points_per_decade", true);
    if (ppd > 100000) {
      throw ConfigError("grid.points_per_decade", "must be <= 100000");
    }
    c.grid.points_per_decade = static_cast<std::uint32_t>(ppd);
  }
  if (auto it = j.find("record_choices"); it != j.end()) {
    if (!it->is_boolean()) throw ConfigError("record_choices", "must be a boolean");
    c.record_choices = it->get<bool>();
  }
  return c;
}

/// Parses and validates a JSON config document.
inline SimulationConfig parse_config(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(j);
}

}  // namespace rmab

#endif  // RMAB_CONFIG_HPP_
