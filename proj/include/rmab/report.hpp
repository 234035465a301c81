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

// CSV/manifest output and the scenario runner behind the command line tool.
//
// Numbers are written with the shortest decimal form that parses back to the
// same double. Undefined values (normalized regret at t = 1) are written as
// empty fields. Lines end in LF.

#ifndef RMAB_REPORT_HPP_
#define RMAB_REPORT_HPP_

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "rmab/config.hpp"
#include "rmab/env.hpp"
#include "rmab/regret.hpp"
#include "rmab/scenarios.hpp"
#include "rmab/sim.hpp"
#include "rmab/version.hpp"

namespace rmab {

/// Failure to read or write an output artifact.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kRegretCsvHeader =
    "t,mean_regret,std_regret,normalized_regret";
inline constexpr std::string_view kSlopeCsvHeader =
    "t,empirical_slope,theoretical_slope";
inline constexpr std::string_view kGapCsvHeader =
    "band,idle_prob,mu,gap,growth_factor,count_bound";

/// Shortest round-trip decimal; NaN becomes an empty string.
inline std::string format_number(double v) {
  if (std::isnan(v)) return {};
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_number(std::string_view field) {
  if (field.empty()) return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw IoError("malformed number '" + std::string(field) + "'");
  }
  return v;
}

inline void write_regret_csv(std::ostream& out, const RegretTrace& trace) {
  out << kRegretCsvHeader << '\n';
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << trace.times[i] << ',' << format_number(trace.mean_regret[i]) << ','
        << format_number(trace.std_regret[i]) << ','
        << format_number(trace.normalized[i]) << '\n';
  }
}

inline RegretTrace read_regret_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRegretCsvHeader) {
    throw IoError("regret CSV: bad or missing header");
  }
  RegretTrace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 4) throw IoError("regret CSV: expected 4 fields");
    TimeIndex t = 0;
    const auto res =
        std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), t);
    if (res.ec != std::errc{}) throw IoError("regret CSV: bad time field");
    trace.times.push_back(t);
    trace.mean_regret.push_back(parse_number(fields[1]));
    trace.std_regret.push_back(parse_number(fields[2]));
    trace.normalized.push_back(parse_number(fields[3]));
  }
  return trace;
}

inline void write_slope_csv(std::ostream& out, const RegretTrace& trace,
                            const GapProfile& gaps,
                            double window = kDefaultSlopeWindow) {
  const std::vector<double> slope = empirical_slope(trace, window);
  out << kSlopeCsvHeader << '\n';
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << trace.times[i] << ',' << format_number(slope[i]) << ','
        << format_number(theoretical_slope(trace.times[i], gaps)) << '\n';
  }
}

/// One line of the per-band gap report. Growth factor and count bound are
/// absent for arms with zero gap.
struct GapRow {
  std::size_t band = 0;  // 1-based
  double idle_prob = 0.0;
  double mu = 0.0;
  double gap = 0.0;
  std::optional<double> growth_factor;
  std::optional<double> count_bound;
};

/// Per band: stationary idle probability, mean, gap, e^(gap^2) and the
/// sensing-count bound at the horizon, taking the first sensing at t = band
/// number (the round-robin start).
inline std::vector<GapRow> gap_report(const SimulationConfig& config) {
  const GapProfile gaps = make_gap_profile(config.bands);
  std::vector<GapRow> rows;
  for (std::size_t n = 0; n < config.bands.size(); ++n) {
    GapRow row;
    row.band = n + 1;
    row.idle_prob = idle_probability(config.bands[n]);
    row.mu = gaps.mu[n];
    row.gap = gaps.gaps[n];
    if (row.gap > 0.0) {
      row.growth_factor = interval_growth_factor(row.gap);
      const auto z1 = static_cast<double>(n + 1);
      const auto horizon = static_cast<double>(config.horizon);
      if (horizon >= z1) {
        row.count_bound = sensing_count_bound(horizon, z1, *row.growth_factor);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

inline void write_gap_csv(std::ostream& out, const std::vector<GapRow>& rows) {
  out << kGapCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.band << ',' << format_number(r.idle_prob) << ','
        << format_number(r.mu) << ',' << format_number(r.gap) << ','
        << (r.growth_factor ? format_number(*r.growth_factor) : "") << ','
        << (r.count_bound ? format_number(*r.count_bound) : "") << '\n';
  }
}

namespace detail {

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

inline void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string() +
                  (ec ? ": " + ec.message() : ""));
  }
}

}  // namespace detail

struct RunOutputs {
  std::vector<std::filesystem::path> files;
  std::vector<MonteCarloResult> results;  // one per labeled config
};

/// Simulates each labeled config and writes regret_<label>.csv (plus
/// slope_<label>.csv when `emit_slope`), gaps.csv and manifest.json into
/// `out_dir`. The manifest holds every config verbatim, seeds included, and
/// is enough to regenerate the CSVs byte for byte.
inline RunOutputs run_configs(const std::vector<LabeledConfig>& configs,
                              const std::filesystem::path& out_dir,
                              std::optional<ScenarioName> scenario,
                              bool emit_slope, unsigned threads = 0) {
  if (configs.empty()) throw std::invalid_argument("no configs to run");
  detail::ensure_directory(out_dir);
  RunOutputs outputs;
  nlohmann::json manifest;
  manifest["tool"] = "rmab";
  manifest["version"] = std::string(kVersion);
  manifest["scenario"] =
      scenario ? nlohmann::json(std::string(scenario_name(*scenario)))
               : nlohmann::json(nullptr);
  manifest["slope_window"] = kDefaultSlopeWindow;
  manifest["configs"] = nlohmann::json::object();
  nlohmann::json files = nlohmann::json::array();

  for (const auto& [label, config] : configs) {
    MonteCarloResult result = monte_carlo(config, {threads, false});
    std::ostringstream regret;
    write_regret_csv(regret, result.trace);
    const auto regret_path = out_dir / ("regret_" + label + ".csv");
    detail::write_text_file(regret_path, regret.str());
    outputs.files.push_back(regret_path);
    files.push_back(regret_path.filename().string());
    if (emit_slope) {
      std::ostringstream slope;
      write_slope_csv(slope, result.trace, make_gap_profile(config.bands));
      const auto slope_path = out_dir / ("slope_" + label + ".csv");
      detail::write_text_file(slope_path, slope.str());
      outputs.files.push_back(slope_path);
      files.push_back(slope_path.filename().string());
    }
    manifest["configs"][label] = config_to_json(config);
    outputs.results.push_back(std::move(result));
  }

  std::ostringstream gaps;
  write_gap_csv(gaps, gap_report(configs.front().config));
  const auto gap_path = out_dir / "gaps.csv";
  detail::write_text_file(gap_path, gaps.str());
  outputs.files.push_back(gap_path);
  files.push_back(gap_path.filename().string());

  manifest["outputs"] = files;
  const auto manifest_path = out_dir / "manifest.json";
  detail::write_text_file(manifest_path, manifest.dump(2) + "\n");
  outputs.files.push_back(manifest_path);
  return outputs;
}

inline RunOutputs run_scenario(const ScenarioPreset& preset,
                               const std::filesystem::path& out_dir,
                               unsigned threads = 0) {
  return run_configs(preset.configs, out_dir, preset.name, preset.emits_slope,
                     threads);
}

inline RunOutputs run_simulation(const SimulationConfig& config,
                                 const std::filesystem::path& out_dir,
                                 unsigned threads = 0) {
  return run_configs({{policy_name(config.policy.type), config}}, out_dir,
                     std::nullopt, false, threads);
}

}  // namespace rmab

#endif  // RMAB_REPORT_HPP_
