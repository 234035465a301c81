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

#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "rmab/env.hpp"
#include "rmab/random.hpp"
#include "rmab/regret.hpp"

namespace rmab {
namespace {

void expect_rel(double actual, double expected, double tol = 1e-12) {
  EXPECT_LE(std::abs(actual - expected), tol * std::abs(expected))
      << "actual=" << actual << " expected=" << expected;
}

// Means of the five-band Markov scenario, 0.1 + 0.9 * p10 / (p10 + p01),
// evaluated in exact rationals.
const std::vector<double> kMarkovMu = {0.4, 0.325, 0.85, 0.28, 0.25};
// sum over suboptimal bands of 1 / gap, exact-rational evaluation.
constexpr double kMarkovInverseGapSum = 7.548036758563074;

TEST(GapProfile, BestArmAndGaps) {
  const GapProfile g = make_gap_profile(kMarkovMu);
  EXPECT_EQ(g.best_arm, 2u);
  EXPECT_EQ(g.mu_star, 0.85);
  EXPECT_EQ(g.gaps[2], 0.0);
  for (double d : g.gaps) EXPECT_GE(d, 0.0);
  const GapProfile dup = make_gap_profile(std::vector<double>{0.5, 0.7, 0.7});
  EXPECT_EQ(dup.best_arm, 1u);
  EXPECT_FALSE(dup.suboptimal(2));
}

TEST(WeakRegret, Examples) {
  const GapProfile g = make_gap_profile(std::vector<double>{0.85, 0.4});
  const std::vector<std::uint64_t> only_best = {10, 0};
  EXPECT_EQ(weak_regret(only_best, g, 10), 0.0);
  const std::vector<std::uint64_t> split = {5, 5};
  expect_rel(weak_regret(split, g, 10), 2.25);
  const std::vector<std::uint64_t> none = {0, 0};
  EXPECT_EQ(weak_regret(none, g, 0), 0.0);
}

TEST(WeakRegret, CountSumMismatchThrows) {
  const GapProfile g = make_gap_profile(std::vector<double>{0.85, 0.4});
  const std::vector<std::uint64_t> counts = {5, 4};
  EXPECT_THROW(weak_regret(counts, g, 10), std::invalid_argument);
  const std::vector<std::uint64_t> wrong_len = {10};
  EXPECT_THROW(weak_regret(wrong_len, g, 10), std::invalid_argument);
}

// t * mu* - sum mu_n T_n and sum gap_n T_n agree; regret is linear in counts.
TEST(WeakRegret, TwoFormsAgreeOnRandomCounts) {
  Rng gen(51);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + gen() % 6;
    std::vector<double> mu(n);
    for (auto& m : mu) m = uniform01(gen);
    const GapProfile g = make_gap_profile(mu);
    std::vector<std::uint64_t> a(n), b(n), sum(n);
    std::uint64_t ta = 0, tb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = gen() % 1000;
      b[i] = gen() % 1000;
      sum[i] = a[i] + b[i];
      ta += a[i];
      tb += b[i];
    }
    double direct = static_cast<double>(ta) * g.mu_star;
    for (std::size_t i = 0; i < n; ++i) direct -= mu[i] * static_cast<double>(a[i]);
    const double ra = weak_regret(a, g, ta);
    EXPECT_NEAR(ra, direct, 1e-9 * std::max(1.0, std::abs(direct)));
    EXPECT_NEAR(weak_regret(sum, g, ta + tb), ra + weak_regret(b, g, tb),
                1e-9 * std::max(1.0, ra));
  }
}

TEST(TheoreticalSlope, MarkovScenario) {
  const GapProfile g = make_gap_profile(kMarkovMu);
  expect_rel(inverse_gap_sum(g), kMarkovInverseGapSum);
  expect_rel(theoretical_slope(1000, g), kMarkovInverseGapSum / 1000.0);
  EXPECT_NEAR(theoretical_slope(1000, g), 7.548e-3, 1e-6);
}

TEST(TheoreticalSlope, MarkovScenarioFromBandParameters) {
  std::vector<BandModel> bands;
  const double p10[] = {0.1, 0.1, 0.5, 0.1, 0.1};
  const double p01[] = {0.2, 0.3, 0.1, 0.4, 0.5};
  for (int n = 0; n < 5; ++n) bands.push_back(BandModel::markov(p10[n], p01[n], 1.0, 0.1));
  const GapProfile g = make_gap_profile(bands);
  for (std::size_t n = 0; n < 5; ++n) expect_rel(g.mu[n], kMarkovMu[n]);
  expect_rel(inverse_gap_sum(g), kMarkovInverseGapSum);
}

TEST(TheoreticalSlope, ScalingAndDuplicates) {
  const GapProfile one = make_gap_profile(std::vector<double>{1.0, 0.0});
  EXPECT_EQ(theoretical_slope(1, one), 1.0);
  const GapProfile g = make_gap_profile(kMarkovMu);
  for (TimeIndex t : {1u, 10u, 333u, 100000u}) {
    expect_rel(theoretical_slope(2 * t, g), theoretical_slope(t, g) / 2.0);
    expect_rel(theoretical_slope(t, g) * static_cast<double>(t), inverse_gap_sum(g));
  }
  const GapProfile dup = make_gap_profile(std::vector<double>{0.5, 0.5, 0.25});
  EXPECT_EQ(theoretical_slope(1, dup), 4.0);
  EXPECT_THROW(theoretical_slope(0, g), std::invalid_argument);
}

TEST(IntervalGrowthFactor, Examples) {
  EXPECT_EQ(interval_growth_factor(0.0), 1.0);
  expect_rel(interval_growth_factor(1.0), 2.718281828459045);
  expect_rel(interval_growth_factor(0.45), 1.2244600851219148);
  EXPECT_THROW(interval_growth_factor(-0.1), std::invalid_argument);
}

TEST(SensingCountBound, Examples) {
  EXPECT_EQ(sensing_count_bound(7, 7, 1.5), 1.0);
  expect_rel(sensing_count_bound(5.0 * std::exp(3.0), 5, std::exp(1.0)), 4.0);
  expect_rel(sensing_count_bound(10000, 1, interval_growth_factor(0.45)),
             46.483162330746581);
}

TEST(SensingCountBound, MonotoneAndGuarded) {
  double prev = 0.0;
  for (TimeIndex t = 3; t < 100000; t = t * 3 / 2 + 1) {
    const double b = sensing_count_bound(t, 3, 1.2);
    EXPECT_GE(b, prev);
    prev = b;
    EXPECT_GE(sensing_count_bound(t, 3, 1.2), sensing_count_bound(t, 3, 1.5));
  }
  EXPECT_THROW(sensing_count_bound(10, 1, 1.0), std::invalid_argument);
  EXPECT_THROW(sensing_count_bound(10, 11, 2.0), std::invalid_argument);
  EXPECT_THROW(sensing_count_bound(10, 0, 2.0), std::invalid_argument);
}

RegretTrace trace_from(const std::vector<TimeIndex>& times, auto&& f) {
  RegretTrace tr;
  tr.times = times;
  for (TimeIndex t : times) tr.mean_regret.push_back(f(static_cast<double>(t)));
  tr.std_regret.assign(times.size(), 0.0);
  tr.normalized = normalize_regret(tr);
  return tr;
}

std::vector<TimeIndex> integers(TimeIndex lo, TimeIndex hi) {
  std::vector<TimeIndex> v;
  for (TimeIndex t = lo; t <= hi; ++t) v.push_back(t);
  return v;
}

TEST(EmpiricalSlope, ConstantAndLinear) {
  const auto grid = make_record_grid(5, 100000);
  for (double s : empirical_slope(trace_from(grid, [](double) { return 3.5; }))) {
    EXPECT_EQ(s, 0.0);
  }
  for (double s : empirical_slope(trace_from(grid, [](double t) { return 0.25 * t + 2; }))) {
    EXPECT_NEAR(s, 0.25, 1e-12);
  }
}

// Oracle: the analytic derivative a / t of a ln t.
TEST(EmpiricalSlope, LogCurveMatchesAnalyticDerivative) {
  const double a = 2.5;
  const auto tr = trace_from(integers(1, 3000), [&](double t) { return a * std::log(t); });
  const auto slope = empirical_slope(tr);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double t = static_cast<double>(tr.times[i]);
    if (t < 100 || t > 3000 / 1.3) continue;
    EXPECT_NEAR(slope[i], a / t, 0.05 * a / t) << "t=" << t;
  }
}

TEST(EmpiricalSlope, AnalyticRegretCurveReproducesTheoreticalSlope) {
  const GapProfile g = make_gap_profile(kMarkovMu);
  const auto grid = make_record_grid(5, 100000);
  const auto tr = trace_from(grid, [&](double t) { return inverse_gap_sum(g) * std::log(t); });
  const auto slope = empirical_slope(tr);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 100 || grid[i] > 100000 / 1.3) continue;
    const double expected = theoretical_slope(grid[i], g);
    EXPECT_NEAR(slope[i], expected, 0.05 * expected) << "t=" << grid[i];
  }
}

TEST(EmpiricalSlope, Errors) {
  RegretTrace tr = trace_from(std::vector<TimeIndex>{1, 2}, [](double t) { return t; });
  EXPECT_THROW(empirical_slope(tr), std::invalid_argument);
  tr = trace_from(std::vector<TimeIndex>{1, 3, 2}, [](double t) { return t; });
  EXPECT_THROW(empirical_slope(tr), std::invalid_argument);
}

TEST(NormalizeRegret, Examples) {
  const auto zero = trace_from(integers(1, 10), [](double) { return 0.0; });
  EXPECT_TRUE(std::isnan(zero.normalized[0]));
  for (std::size_t i = 1; i < zero.size(); ++i) EXPECT_EQ(zero.normalized[i], 0.0);
  const auto log_curve = trace_from(integers(1, 5), [](double t) { return std::log(t); });
  expect_rel(log_curve.normalized[2], 1.0);
  const auto scaled = trace_from(make_record_grid(1, 1000000),
                                 [](double t) { return 4.0 * std::log(t); });
  expect_rel(scaled.normalized.back(), 4.0);
}

TEST(RecordGrid, ContainsPrefixAndHorizon) {
  const auto grid = make_record_grid(5, 100000);
  for (TimeIndex t = 1; t <= 5; ++t) EXPECT_EQ(grid[t - 1], t);
  EXPECT_EQ(grid.back(), 100000u);
  for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_LT(grid[i - 1], grid[i]);
  // 200 points per decade, minus integer collisions at small t.
  EXPECT_GT(grid.size(), 690u);
  EXPECT_LT(grid.size(), 1001u);
  const auto odd = make_record_grid(3, 12345, GridSpec{10});
  EXPECT_EQ(odd.back(), 12345u);
}

}  // namespace
}  // namespace rmab
