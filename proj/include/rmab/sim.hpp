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

// Single episodes and Monte Carlo batches.

#ifndef RMAB_SIM_HPP_
#define RMAB_SIM_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "rmab/env.hpp"
#include "rmab/policies.hpp"
#include "rmab/random.hpp"
#include "rmab/regret.hpp"

namespace rmab {

/// Horizon above which per-step choice logs are off unless requested.
inline constexpr TimeIndex kChoiceLogHorizonLimit = 100000;

struct SimulationConfig {
  std::vector<BandModel> bands;
  PolicyKind policy;
  TimeIndex horizon = 100000;
  std::uint64_t runs = 1000;
  std::uint64_t master_seed = 0;
  GridSpec grid;
  std::optional<bool> record_choices;  // unset: on iff horizon <= 10^5

  std::size_t n_arms() const { return bands.size(); }
  bool records_choices() const {
    return record_choices.value_or(horizon <= kChoiceLogHorizonLimit);
  }

  bool operator==(const SimulationConfig&) const = default;
};

/// Throws std::invalid_argument on the first violated constraint.
inline void validate(const SimulationConfig& config) {
  if (config.bands.empty()) throw std::invalid_argument("bands: need >= 1 band");
  for (std::size_t n = 0; n < config.bands.size(); ++n) {
    try {
      validate(config.bands[n]);
      (void)expected_reward(config.bands[n]);
    } catch (const std::exception& e) {
      throw std::invalid_argument("bands[" + std::to_string(n) + "]: " + e.what());
    }
  }
  if (config.horizon < config.n_arms()) {
    throw std::invalid_argument("horizon must be >= number of bands");
  }
  if (config.runs == 0) throw std::invalid_argument("runs must be >= 1");
  if (config.policy.type == PolicyType::kDsee &&
      config.policy.dsee_budget.kind == DseeBudget::Kind::kConstant &&
      !(config.policy.dsee_budget.value >= 0.0)) {
    throw std::invalid_argument("policy.d must be >= 0");
  }
  if (config.policy.type == PolicyType::kOracle && config.policy.oracle_arm &&
      *config.policy.oracle_arm >= config.n_arms()) {
    throw std::invalid_argument("policy.arm out of range");
  }
  if (config.grid.points_per_decade == 0) {
    throw std::invalid_argument("grid.points_per_decade must be >= 1");
  }
}

/// What one run leaves behind.
struct EpisodeLog {
  std::uint64_t run_index = 0;
  std::vector<std::uint32_t> choices;  // empty unless choice logging is on
  std::vector<TimeIndex> grid_times;
  std::vector<std::vector<std::uint64_t>> counts_at_grid;  // [grid][arm]
  std::vector<bool> suboptimal;                             // per arm
  std::vector<std::vector<TimeIndex>> sensing_times;  // z_{n,k}; suboptimal only

  const std::vector<std::uint64_t>& final_counts() const {
    return counts_at_grid.back();
  }

  bool operator==(const EpisodeLog&) const = default;
};

/// Quantities shared by every run of a config.
struct EpisodeContext {
  GapProfile gaps;
  std::vector<TimeIndex> grid;
  std::size_t oracle_arm = 0;

  static EpisodeContext make(const SimulationConfig& config) {
    validate(config);
    EpisodeContext ctx;
    ctx.gaps = make_gap_profile(config.bands);
    ctx.grid = make_record_grid(config.n_arms(), config.horizon, config.grid);
    ctx.oracle_arm = config.policy.oracle_arm.value_or(ctx.gaps.best_arm);
    return ctx;
  }
};

namespace detail {

template <class PolicyT>
EpisodeLog run_episode_with(const SimulationConfig& config,
                            const EpisodeContext& ctx, std::uint64_t run_index,
                            PolicyT& policy, bool record_choices) {
  const std::size_t n_arms = config.n_arms();
  EpisodeLog log;
  log.run_index = run_index;
  log.grid_times = ctx.grid;
  log.counts_at_grid.reserve(ctx.grid.size());
  log.suboptimal.resize(n_arms);
  log.sensing_times.resize(n_arms);
  for (std::size_t n = 0; n < n_arms; ++n) log.suboptimal[n] = ctx.gaps.suboptimal(n);
  if (record_choices) log.choices.reserve(config.horizon);

  // Policies here are deterministic; the kPolicy stream is reserved.
  Rng env_rng = make_stream(config.master_seed, run_index, Stream::kEnvironment);
  Environment env(config.bands);
  env.reset(env_rng);
  PolicyState state(n_arms);

  std::size_t next_grid = 0;
  for (TimeIndex t = 1; t <= config.horizon; ++t) {
    env.advance(env_rng);
    const std::size_t arm = policy.select(state);
    const double reward = env.reward(arm);
    state.update(arm, reward);
    policy.observe(arm, reward);
    if (record_choices) log.choices.push_back(static_cast<std::uint32_t>(arm));
    if (log.suboptimal[arm]) log.sensing_times[arm].push_back(t);
    if (next_grid < ctx.grid.size() && ctx.grid[next_grid] == t) {
      log.counts_at_grid.push_back(state.counts());
      ++next_grid;
    }
  }
  return log;
}

}  // namespace detail

/// Runs one episode with a precomputed context.
/// Choice logging follows config.records_choices() unless `record_choices`
/// turns it off.
inline EpisodeLog run_episode(const SimulationConfig& config,
                              const EpisodeContext& ctx,
                              std::uint64_t run_index,
                              bool record_choices = true) {
  if (run_index >= config.runs) {
    throw std::out_of_range("run_index must be < runs");
  }
  Policy policy = make_policy(config.policy, config.n_arms(), ctx.oracle_arm);
  return std::visit(
      [&](auto& p) {
        return detail::run_episode_with(
            config, ctx, run_index, p,
            record_choices && config.records_choices());
      },
      policy);
}

/// Runs episode `run_index` of `config`. The environment stream is seeded by
/// derive_seed(master_seed, run_index, Stream::kEnvironment).
inline EpisodeLog run_episode(const SimulationConfig& config,
                              std::uint64_t run_index) {
  return run_episode(config, EpisodeContext::make(config), run_index);
}

struct MonteCarloOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  bool keep_logs = false;
};

struct MonteCarloResult {
  RegretTrace trace;
  std::vector<double> mean_final_counts;  // per arm, at the horizon
  std::vector<EpisodeLog> logs;           // filled iff keep_logs
};

namespace detail {

/// Calls job(i) for i in [0, count) on `threads` workers. The first
/// exception is rethrown after all workers stop.
template <class Job>
void parallel_for(std::uint64_t count, unsigned threads, Job&& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Runs every episode of `config` and aggregates weak regret on the record
/// grid. Per-run results land in slots indexed by run, and the reduction
/// walks them in run order, so the output is bit-identical for any thread
/// count or completion order.
inline MonteCarloResult monte_carlo(const SimulationConfig& config,
                                    MonteCarloOptions options = {}) {
  const EpisodeContext ctx = EpisodeContext::make(config);
  const std::size_t grid_size = ctx.grid.size();
  const std::size_t n_arms = config.n_arms();
  const std::uint64_t runs = config.runs;

  std::vector<double> regret(runs * grid_size);
  std::vector<std::uint64_t> final_counts(runs * n_arms);
  std::vector<EpisodeLog> logs(options.keep_logs ? runs : 0);

  detail::parallel_for(runs, options.threads, [&](std::uint64_t run) {
    EpisodeLog log = run_episode(config, ctx, run, options.keep_logs);
    for (std::size_t g = 0; g < grid_size; ++g) {
      regret[run * grid_size + g] =
          weak_regret(log.counts_at_grid[g], ctx.gaps, ctx.grid[g]);
    }
    std::copy(log.final_counts().begin(), log.final_counts().end(),
              final_counts.begin() + static_cast<std::ptrdiff_t>(run * n_arms));
    if (options.keep_logs) logs[run] = std::move(log);
  });

  MonteCarloResult result;
  RegretTrace& trace = result.trace;
  trace.times = ctx.grid;
  trace.mean_regret.assign(grid_size, 0.0);
  trace.std_regret.assign(grid_size, 0.0);
  const double inv_runs = 1.0 / static_cast<double>(runs);
  for (std::uint64_t run = 0; run < runs; ++run) {
    for (std::size_t g = 0; g < grid_size; ++g) {
      trace.mean_regret[g] += regret[run * grid_size + g];
    }
  }
  for (double& m : trace.mean_regret) m *= inv_runs;
  // Population standard deviation (divide by runs).
  for (std::uint64_t run = 0; run < runs; ++run) {
    for (std::size_t g = 0; g < grid_size; ++g) {
      const double d = regret[run * grid_size + g] - trace.mean_regret[g];
      trace.std_regret[g] += d * d;
    }
  }
  for (double& s : trace.std_regret) s = std::sqrt(s * inv_runs);
  trace.normalized = normalize_regret(trace);

  result.mean_final_counts.assign(n_arms, 0.0);
  for (std::uint64_t run = 0; run < runs; ++run) {
    for (std::size_t n = 0; n < n_arms; ++n) {
      result.mean_final_counts[n] +=
          static_cast<double>(final_counts[run * n_arms + n]);
    }
  }
  for (double& c : result.mean_final_counts) c *= inv_runs;
  result.logs = std::move(logs);
  return result;
}

/// Across-run mean of z_{k+1} / z_k for one k.
struct GrowthRatio {
  std::size_t k = 0;  // 1-based sensing number
  double mean_ratio = 0.0;
  std::uint64_t runs_included = 0;  // runs with a (k+1)-th sensing
  std::uint64_t runs_excluded = 0;  // runs with a k-th but no (k+1)-th sensing
};

/// Inter-sensing growth ratios of a suboptimal arm over many runs. Runs that
/// stop before the (k+1)-th sensing are left out of the k-th mean and counted
/// in runs_excluded.
inline std::vector<GrowthRatio> interval_growth_stats(
    std::span<const EpisodeLog> logs, std::size_t arm) {
  if (logs.empty()) return {};
  for (const auto& log : logs) {
    if (arm >= log.suboptimal.size()) {
      throw std::out_of_range("interval_growth_stats: arm out of range");
    }
    if (!log.suboptimal[arm]) {
      throw std::invalid_argument(
          "interval_growth_stats: arm " + std::to_string(arm) +
          " is an optimal arm");
    }
  }
  std::size_t max_k = 0;
  for (const auto& log : logs) {
    max_k = std::max(max_k, log.sensing_times[arm].size());
  }
  std::vector<GrowthRatio> out;
  for (std::size_t k = 1; k < max_k; ++k) {
    GrowthRatio r;
    r.k = k;
    double sum = 0.0;
    for (const auto& log : logs) {
      const auto& z = log.sensing_times[arm];
      if (z.size() > k) {
        sum += static_cast<double>(z[k]) / static_cast<double>(z[k - 1]);
        ++r.runs_included;
      } else if (z.size() == k) {
        ++r.runs_excluded;
      }
    }
    r.mean_ratio = sum / static_cast<double>(r.runs_included);
    out.push_back(r);
  }
  return out;
}

}  // namespace rmab

#endif  // RMAB_SIM_HPP_
