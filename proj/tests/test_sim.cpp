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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "rmab/scenarios.hpp"
#include "rmab/sim.hpp"

namespace rmab {
namespace {

SimulationConfig small_markov(PolicyKind policy, TimeIndex horizon = 2000,
                              std::uint64_t runs = 8) {
  SimulationConfig c;
  c.bands = markov_scenario_bands();
  c.policy = policy;
  c.horizon = horizon;
  c.runs = runs;
  c.master_seed = 77;
  return c;
}

std::vector<PolicyKind> all_policies() {
  return {PolicyKind::proposed(), PolicyKind::ucb1(),
          PolicyKind::dsee(DseeBudget::constant(10)),
          PolicyKind::dsee(DseeBudget::log_time()), PolicyKind::oracle(),
          PolicyKind::oracle(0)};
}

TEST(RunEpisode, SingleArmAlwaysChosen) {
  SimulationConfig c;
  c.bands = {BandModel::bernoulli(0.4, 1.0, 0.1)};
  c.policy = PolicyKind::proposed();
  c.horizon = 500;
  c.runs = 1;
  const EpisodeLog log = run_episode(c, 0);
  for (auto arm : log.choices) EXPECT_EQ(arm, 0u);
  EXPECT_EQ(log.final_counts()[0], 500u);
  const auto mc = monte_carlo(c);
  for (double r : mc.trace.mean_regret) EXPECT_EQ(r, 0.0);
}

TEST(RunEpisode, SameSeedSameLog) {
  for (const auto& p : all_policies()) {
    const auto c = small_markov(p);
    EXPECT_EQ(run_episode(c, 3), run_episode(c, 3));
  }
  // Adaptive policies react to the run's own band trajectories.
  for (const auto& p : {PolicyKind::proposed(), PolicyKind::ucb1()}) {
    const auto c = small_markov(p);
    EXPECT_NE(run_episode(c, 3).choices, run_episode(c, 4).choices);
  }
}

TEST(RunEpisode, OracleOnBestArmConcentratesCounts) {
  const auto c = small_markov(PolicyKind::oracle());
  const EpisodeLog log = run_episode(c, 0);
  for (std::size_t g = 0; g < log.grid_times.size(); ++g) {
    for (std::size_t n = 0; n < 5; ++n) {
      EXPECT_EQ(log.counts_at_grid[g][n], n == 2 ? log.grid_times[g] : 0u);
    }
  }
  for (std::size_t n = 0; n < 5; ++n) EXPECT_TRUE(log.sensing_times[n].empty());
}

TEST(RunEpisode, CountConservationAndCoverage) {
  for (const auto& p : all_policies()) {
    const auto c = small_markov(p);
    for (std::uint64_t run = 0; run < c.runs; ++run) {
      const EpisodeLog log = run_episode(c, run);
      for (std::size_t g = 0; g < log.grid_times.size(); ++g) {
        const auto& counts = log.counts_at_grid[g];
        EXPECT_EQ(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}),
                  log.grid_times[g]);
        if (p.type != PolicyType::kOracle && log.grid_times[g] >= 5) {
          for (auto k : counts) EXPECT_GE(k, 1u);
        }
      }
    }
  }
}

TEST(RunEpisode, SensingTimesMatchChoices) {
  const auto c = small_markov(PolicyKind::proposed());
  const EpisodeLog log = run_episode(c, 1);
  ASSERT_EQ(log.choices.size(), c.horizon);
  for (std::size_t n = 0; n < 5; ++n) {
    std::vector<TimeIndex> expected;
    if (log.suboptimal[n]) {
      for (std::size_t i = 0; i < log.choices.size(); ++i) {
        if (log.choices[i] == n) expected.push_back(i + 1);
      }
    }
    EXPECT_EQ(log.sensing_times[n], expected);
  }
  // Round-robin start: band n is first sensed at t = n + 1.
  EXPECT_EQ(log.sensing_times[0].front(), 1u);
  EXPECT_EQ(log.sensing_times[4].front(), 5u);
}

// Truncating a long run must give the short run: seeding may not depend on
// the horizon.
TEST(RunEpisode, HorizonPrefixProperty) {
  for (const auto& p : all_policies()) {
    auto long_cfg = small_markov(p, 5000);
    auto short_cfg = small_markov(p, 1234);
    const EpisodeLog a = run_episode(long_cfg, 2);
    const EpisodeLog b = run_episode(short_cfg, 2);
    ASSERT_EQ(b.choices.size(), 1234u);
    EXPECT_TRUE(std::equal(b.choices.begin(), b.choices.end(), a.choices.begin()));
    for (std::size_t g = 0; g < b.grid_times.size(); ++g) {
      const auto it = std::find(a.grid_times.begin(), a.grid_times.end(), b.grid_times[g]);
      if (it == a.grid_times.end()) continue;
      EXPECT_EQ(b.counts_at_grid[g], a.counts_at_grid[it - a.grid_times.begin()]);
    }
  }
}

TEST(RunEpisode, RejectsBadInput) {
  auto c = small_markov(PolicyKind::proposed());
  EXPECT_THROW(run_episode(c, c.runs), std::out_of_range);
  c.horizon = 3;
  EXPECT_THROW(run_episode(c, 0), std::invalid_argument);
  c = small_markov(PolicyKind::oracle(9));
  EXPECT_THROW(run_episode(c, 0), std::invalid_argument);
  c = small_markov(PolicyKind::proposed());
  c.bands[0] = BandModel::markov(0.0, 0.0, 1.0, 0.1);
  EXPECT_THROW(run_episode(c, 0), std::invalid_argument);
}

TEST(RunEpisode, ChoiceLoggingDefaultsFollowHorizon) {
  auto c = small_markov(PolicyKind::proposed(), 200);
  EXPECT_FALSE(run_episode(c, 0).choices.empty());
  c.record_choices = false;
  EXPECT_TRUE(run_episode(c, 0).choices.empty());
  c.record_choices.reset();
  c.horizon = kChoiceLogHorizonLimit + 1;
  EXPECT_FALSE(c.records_choices());
}

TEST(MonteCarlo, SingleRunHasZeroSpread) {
  const auto c = small_markov(PolicyKind::proposed(), 2000, 1);
  const auto mc = monte_carlo(c);
  const EpisodeContext ctx = EpisodeContext::make(c);
  const EpisodeLog log = run_episode(c, 0);
  for (std::size_t g = 0; g < mc.trace.size(); ++g) {
    EXPECT_EQ(mc.trace.std_regret[g], 0.0);
    EXPECT_EQ(mc.trace.mean_regret[g],
              weak_regret(log.counts_at_grid[g], ctx.gaps, ctx.grid[g]));
  }
}

TEST(MonteCarlo, OracleRegretIsExactlyZero) {
  const auto mc = monte_carlo(small_markov(PolicyKind::oracle(), 3000, 16));
  for (double r : mc.trace.mean_regret) EXPECT_EQ(r, 0.0);
  for (double s : mc.trace.std_regret) EXPECT_EQ(s, 0.0);
}

TEST(MonteCarlo, SuboptimalOracleRegretIsLinear) {
  const auto c = small_markov(PolicyKind::oracle(0), 1000, 2);
  const auto mc = monte_carlo(c);
  const double gap = 0.85 - 0.4;
  for (std::size_t g = 0; g < mc.trace.size(); ++g) {
    EXPECT_NEAR(mc.trace.mean_regret[g], gap * static_cast<double>(mc.trace.times[g]),
                1e-9 * static_cast<double>(mc.trace.times[g]));
  }
}

TEST(MonteCarlo, BitIdenticalAcrossThreadCounts) {
  for (const auto& p : all_policies()) {
    const auto c = small_markov(p, 3000, 24);
    const auto one = monte_carlo(c, {1, true});
    const auto four = monte_carlo(c, {4, true});
    const auto seven = monte_carlo(c, {7, true});
    EXPECT_EQ(one.trace.mean_regret, four.trace.mean_regret);
    EXPECT_EQ(one.trace.std_regret, four.trace.std_regret);
    EXPECT_EQ(one.trace.mean_regret, seven.trace.mean_regret);
    EXPECT_EQ(one.mean_final_counts, seven.mean_final_counts);
    EXPECT_EQ(one.logs, four.logs);
  }
}

// Reduction is in run-index order, so the aggregate equals a hand-written
// reduction over independently executed runs in reverse order.
TEST(MonteCarlo, IndependentOfExecutionOrder) {
  const auto c = small_markov(PolicyKind::proposed(), 1500, 10);
  const auto mc = monte_carlo(c, {3, false});
  const EpisodeContext ctx = EpisodeContext::make(c);
  std::vector<EpisodeLog> logs(c.runs);
  for (std::uint64_t r = c.runs; r-- > 0;) logs[r] = run_episode(c, r);
  for (std::size_t g = 0; g < ctx.grid.size(); ++g) {
    double sum = 0.0;
    for (const auto& log : logs) {
      sum += weak_regret(log.counts_at_grid[g], ctx.gaps, ctx.grid[g]);
    }
    EXPECT_EQ(mc.trace.mean_regret[g], sum * (1.0 / static_cast<double>(c.runs)));
  }
}

TEST(MonteCarlo, PropagatesErrors) {
  auto c = small_markov(PolicyKind::proposed());
  c.runs = 0;
  EXPECT_THROW(monte_carlo(c), std::invalid_argument);
}

EpisodeLog log_with_times(std::vector<TimeIndex> z) {
  EpisodeLog log;
  log.suboptimal = {true, false};
  log.sensing_times = {std::move(z), {}};
  return log;
}

TEST(IntervalGrowthStats, ArithmeticProgressionApproachesOne) {
  // Round robin over 4 arms: arm 0 sensed at 1, 5, 9, ...
  std::vector<TimeIndex> z;
  for (TimeIndex t = 1; t <= 4000; t += 4) z.push_back(t);
  const std::vector<EpisodeLog> logs = {log_with_times(z)};
  const auto stats = interval_growth_stats(logs, 0);
  ASSERT_EQ(stats.size(), z.size() - 1);
  EXPECT_EQ(stats[0].mean_ratio, 5.0);
  for (std::size_t i = 1; i < stats.size(); ++i) {
    EXPECT_LT(stats[i].mean_ratio, stats[i - 1].mean_ratio);
  }
  EXPECT_NEAR(stats.back().mean_ratio, 1.0, 2e-3);
}

TEST(IntervalGrowthStats, NeverResensedGivesEmptySequence) {
  const std::vector<EpisodeLog> logs = {log_with_times({3})};
  EXPECT_TRUE(interval_growth_stats(logs, 0).empty());
}

TEST(IntervalGrowthStats, ExclusionsAreCounted) {
  const std::vector<EpisodeLog> logs = {log_with_times({1, 2, 8}),
                                        log_with_times({2, 6}),
                                        log_with_times({4})};
  const auto stats = interval_growth_stats(logs, 0);
  ASSERT_EQ(stats.size(), 2u);
  EXPECT_EQ(stats[0].k, 1u);
  EXPECT_DOUBLE_EQ(stats[0].mean_ratio, (2.0 + 3.0) / 2.0);
  EXPECT_EQ(stats[0].runs_included, 2u);
  EXPECT_EQ(stats[0].runs_excluded, 1u);
  EXPECT_DOUBLE_EQ(stats[1].mean_ratio, 4.0);
  EXPECT_EQ(stats[1].runs_included, 1u);
  EXPECT_EQ(stats[1].runs_excluded, 1u);
}

TEST(IntervalGrowthStats, OptimalArmIsAnError) {
  const std::vector<EpisodeLog> logs = {log_with_times({1, 3})};
  EXPECT_THROW(interval_growth_stats(logs, 1), std::invalid_argument);
}

TEST(IntervalGrowthStats, FromSimulatedProposedRuns) {
  SimulationConfig c;
  c.bands = {BandModel::bernoulli(0.9, 1.0, 0.0), BandModel::bernoulli(0.4, 1.0, 0.0)};
  c.policy = PolicyKind::proposed();
  c.horizon = 20000;
  c.runs = 50;
  c.master_seed = 5;
  const auto mc = monte_carlo(c, {0, true});
  const auto stats = interval_growth_stats(mc.logs, 1);
  ASSERT_FALSE(stats.empty());
  for (const auto& s : stats) EXPECT_GT(s.mean_ratio, 1.0);
}

}  // namespace
}  // namespace rmab
