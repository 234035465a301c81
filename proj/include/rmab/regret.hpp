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

// Weak regret against the best single arm and the analytic quantities of the
// logarithmic-regret argument.

#ifndef RMAB_REGRET_HPP_
#define RMAB_REGRET_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmab/env.hpp"
#include "rmab/policies.hpp"

namespace rmab {

/// True means, the best mean and the optimality gaps mu* - mu_n.
struct GapProfile {
  std::vector<double> mu;
  double mu_star = 0.0;
  std::size_t best_arm = 0;  // lowest index among the maximizers
  std::vector<double> gaps;

  std::size_t size() const { return mu.size(); }
  bool suboptimal(std::size_t arm) const { return gaps[arm] > 0.0; }
};

inline GapProfile make_gap_profile(std::span<const double> mu) {
  if (mu.empty()) throw std::invalid_argument("gap profile needs >= 1 arm");
  GapProfile g;
  g.mu.assign(mu.begin(), mu.end());
  g.best_arm = static_cast<std::size_t>(
      std::max_element(g.mu.begin(), g.mu.end()) - g.mu.begin());
  g.mu_star = g.mu[g.best_arm];
  g.gaps.reserve(g.mu.size());
  for (double m : g.mu) g.gaps.push_back(g.mu_star - m);
  return g;
}

inline GapProfile make_gap_profile(std::span<const BandModel> bands) {
  std::vector<double> mu;
  mu.reserve(bands.size());
  for (const auto& b : bands) mu.push_back(expected_reward(b));
  return make_gap_profile(mu);
}

/// Pseudo-regret sum_n gap_n * T_n(t), which equals t*mu* - sum_n mu_n*T_n(t)
/// when the counts sum to t.
inline double weak_regret(std::span<const std::uint64_t> counts,
                          const GapProfile& gaps, TimeIndex t) {
  if (counts.size() != gaps.size()) {
    throw std::invalid_argument("weak_regret: counts and gaps differ in length");
  }
  const std::uint64_t total =
      std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (total != t) {
    throw std::invalid_argument("weak_regret: counts sum to " +
                                std::to_string(total) + ", expected t=" +
                                std::to_string(t));
  }
  double r = 0.0;
  for (std::size_t n = 0; n < counts.size(); ++n) {
    r += gaps.gaps[n] * static_cast<double>(counts[n]);
  }
  return r;
}

/// sum over arms with a positive gap of 1/gap. Arms tied with the best
/// contribute nothing.
inline double inverse_gap_sum(const GapProfile& gaps) {
  double s = 0.0;
  for (double d : gaps.gaps) {
    if (d > 0.0) s += 1.0 / d;
  }
  return s;
}

/// Asymptotic regret slope (sum_{gap>0} 1/gap) / t.
inline double theoretical_slope(TimeIndex t, const GapProfile& gaps) {
  if (t < 1) throw std::invalid_argument("theoretical_slope requires t >= 1");
  return inverse_gap_sum(gaps) / static_cast<double>(t);
}

/// e^(gap^2): the factor by which the gap between consecutive sensings of a
/// suboptimal arm grows.
inline double interval_growth_factor(double gap) {
  if (!(gap >= 0.0)) throw std::invalid_argument("gap must be >= 0");
  return std::exp(gap * gap);
}

/// Upper bound on the number of sensings by time t of an arm first sensed at
/// z1 whose inter-sensing times grow by C:
///   (ln t - ln z1) / ln C + 1.
/// Times are real so the bound can be evaluated between integer instants.
inline double sensing_count_bound(double t, double z1, double growth) {
  if (!(growth > 1.0)) {
    throw std::invalid_argument("sensing_count_bound requires C > 1");
  }
  if (!(z1 >= 1.0) || !(t >= z1)) {
    throw std::invalid_argument("sensing_count_bound requires t >= z1 >= 1");
  }
  return (std::log(t) - std::log(z1)) / std::log(growth) + 1.0;
}

/// Mean/std of weak regret across runs on a set of recorded times.
struct RegretTrace {
  std::vector<TimeIndex> times;
  std::vector<double> mean_regret;
  std::vector<double> std_regret;
  std::vector<double> normalized;  // NaN where t < 2

  std::size_t size() const { return times.size(); }
};

/// mean_regret / ln t; NaN for t = 1 where ln t = 0.
inline std::vector<double> normalize_regret(const RegretTrace& trace) {
  std::vector<double> out(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out[i] = trace.times[i] < 2
                 ? std::numeric_limits<double>::quiet_NaN()
                 : trace.mean_regret[i] /
                       std::log(static_cast<double>(trace.times[i]));
  }
  return out;
}

/// Default geometric smoothing window: a factor of 1.5 in t.
inline constexpr double kDefaultSlopeWindow = 1.5;

/// d mean_regret / dt on the trace's (possibly non-uniform) grid.
///
/// Raw estimates are central differences (one-sided at the ends), then each
/// point is replaced by the average of the raw estimates whose times lie in
/// [t / sqrt(w), t * sqrt(w)]. window = 1 disables smoothing.
inline std::vector<double> empirical_slope(const RegretTrace& trace,
                                           double window = kDefaultSlopeWindow) {
  const std::size_t n = trace.size();
  if (n < 3) throw std::invalid_argument("empirical_slope needs >= 3 points");
  if (!(window >= 1.0)) throw std::invalid_argument("slope window must be >= 1");
  const auto& t = trace.times;
  const auto& r = trace.mean_regret;
  for (std::size_t i = 1; i < n; ++i) {
    if (t[i] <= t[i - 1]) {
      throw std::invalid_argument("empirical_slope needs increasing times");
    }
  }
  auto dt = [&](std::size_t a, std::size_t b) {
    return static_cast<double>(t[b]) - static_cast<double>(t[a]);
  };
  std::vector<double> raw(n);
  raw[0] = (r[1] - r[0]) / dt(0, 1);
  raw[n - 1] = (r[n - 1] - r[n - 2]) / dt(n - 2, n - 1);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    raw[i] = (r[i + 1] - r[i - 1]) / dt(i - 1, i + 1);
  }
  if (window == 1.0) return raw;

  const double half = std::sqrt(window);
  std::vector<double> smoothed(n);
  std::size_t lo = 0;
  std::size_t hi = 0;  // exclusive
  for (std::size_t i = 0; i < n; ++i) {
    const double ti = static_cast<double>(t[i]);
    while (hi < n && static_cast<double>(t[hi]) <= ti * half) ++hi;
    while (static_cast<double>(t[lo]) < ti / half) ++lo;
    // Summed afresh per point; a running sum drifts over long traces.
    double sum = 0.0;
    for (std::size_t j = lo; j < hi; ++j) sum += raw[j];
    smoothed[i] = sum / static_cast<double>(hi - lo);
  }
  return smoothed;
}

/// Recording grid: log-spaced times plus every t in 1..N and the horizon.
struct GridSpec {
  std::uint32_t points_per_decade = 200;

  bool operator==(const GridSpec&) const = default;
};

inline std::vector<TimeIndex> make_record_grid(std::size_t n_arms,
                                               TimeIndex horizon,
                                               GridSpec spec = {}) {
  if (spec.points_per_decade == 0) {
    throw std::invalid_argument("points_per_decade must be >= 1");
  }
  std::vector<TimeIndex> grid;
  for (TimeIndex t = 1; t <= std::min<TimeIndex>(n_arms, horizon); ++t) {
    grid.push_back(t);
  }
  const double step = 1.0 / static_cast<double>(spec.points_per_decade);
  for (std::uint64_t i = 0;; ++i) {
    const double v = std::round(std::pow(10.0, static_cast<double>(i) * step));
    if (v > static_cast<double>(horizon)) break;
    grid.push_back(static_cast<TimeIndex>(v));
  }
  grid.push_back(horizon);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace rmab

#endif  // RMAB_REGRET_HPP_
