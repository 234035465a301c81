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

// Band occupancy processes. A band is either i.i.d. Bernoulli or a 2-state
// (idle/busy) Gilbert-Elliott chain; the reward is the rate attached to the
// band's current state.

#ifndef RMAB_ENV_HPP_
#define RMAB_ENV_HPP_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmab/random.hpp"

namespace rmab {

enum class OccupancyKind { kBernoulli, kMarkov };

enum class InitMode { kStationary, kFixedIdle, kFixedBusy };

/// Raised when a 2-state chain has p10 = p01 = 0 and a stationary quantity
/// is requested.
class DegenerateChainError : public std::domain_error {
 public:
  DegenerateChainError()
      : std::domain_error(
            "degenerate chain: p10 + p01 = 0 has no unique stationary "
            "distribution") {}
};

struct BandModel {
  OccupancyKind kind = OccupancyKind::kBernoulli;
  double p_idle = 1.0;  // Bernoulli only
  double p10 = 0.0;     // Markov only: busy -> idle
  double p01 = 0.0;     // Markov only: idle -> busy
  double r_idle = 1.0;
  double r_busy = 0.0;
  InitMode init = InitMode::kStationary;

  static BandModel bernoulli(double p_idle, double r_idle, double r_busy,
                             InitMode init = InitMode::kStationary) {
    BandModel b;
    b.kind = OccupancyKind::kBernoulli;
    b.p_idle = p_idle;
    b.r_idle = r_idle;
    b.r_busy = r_busy;
    b.init = init;
    return b;
  }

  static BandModel markov(double p10, double p01, double r_idle,
                          double r_busy,
                          InitMode init = InitMode::kStationary) {
    BandModel b;
    b.kind = OccupancyKind::kMarkov;
    b.p10 = p10;
    b.p01 = p01;
    b.r_idle = r_idle;
    b.r_busy = r_busy;
    b.init = init;
    return b;
  }

  bool operator==(const BandModel&) const = default;
};

struct BandState {
  bool occupied = false;

  bool operator==(const BandState&) const = default;
};

struct StepResult {
  BandState state;
  double reward;
};

namespace detail {

inline bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace detail

/// Throws std::invalid_argument naming the first violated constraint.
/// A Markov band with p10 = p01 = 0 is accepted here (it is a valid pair of
/// absorbing states); only the stationary operations reject it.
inline void validate(const BandModel& band) {
  auto check = [](double v, const char* name) {
    if (!detail::is_probability(v)) {
      throw std::invalid_argument(std::string(name) + " must be in [0,1], got " +
                                  std::to_string(v));
    }
  };
  if (band.kind == OccupancyKind::kBernoulli) {
    check(band.p_idle, "p_idle");
  } else {
    check(band.p10, "p10");
    check(band.p01, "p01");
  }
  check(band.r_idle, "r_idle");
  check(band.r_busy, "r_busy");
}

/// Long-run fraction of idle steps of the 2-state chain, p10 / (p01 + p10).
inline double stationary_idle_prob(double p10, double p01) {
  const double total = p10 + p01;
  if (!(total > 0.0)) throw DegenerateChainError();
  return p10 / total;
}

/// Probability that the band is idle in steady state.
inline double idle_probability(const BandModel& band) {
  return band.kind == OccupancyKind::kBernoulli
             ? band.p_idle
             : stationary_idle_prob(band.p10, band.p01);
}

/// Stationary mean reward mu of a band.
inline double expected_reward(const BandModel& band) {
  const double idle = idle_probability(band);
  return idle * band.r_idle + (1.0 - idle) * band.r_busy;
}

inline double reward_of(const BandModel& band, BandState state) {
  return state.occupied ? band.r_busy : band.r_idle;
}

/// Initial state. Consumes exactly one uniform draw in every mode so that
/// the stream layout does not depend on the init rule.
template <class Engine>
BandState sample_initial_state(const BandModel& band, Engine& engine) {
  const double u = uniform01(engine);
  switch (band.init) {
    case InitMode::kFixedIdle:
      return BandState{false};
    case InitMode::kFixedBusy:
      return BandState{true};
    case InitMode::kStationary:
      break;
  }
  return BandState{!(u < idle_probability(band))};
}

/// Advances one band by one time step and returns the new state together
/// with the reward of that new state. Consumes exactly one uniform draw.
template <class Engine>
StepResult step(const BandModel& band, BandState state, Engine& engine) {
  const double u = uniform01(engine);
  BandState next;
  if (band.kind == OccupancyKind::kBernoulli) {
    next.occupied = !(u < band.p_idle);
  } else if (state.occupied) {
    next.occupied = !(u < band.p10);
  } else {
    next.occupied = u < band.p01;
  }
  return {next, reward_of(band, next)};
}

/// All bands of one episode. Every band advances on every call, whether or
/// not anyone looks at its reward.
class Environment {
 public:
  explicit Environment(std::span<const BandModel> bands)
      : bands_(bands.begin(), bands.end()),
        states_(bands.size()),
        rewards_(bands.size(), 0.0) {}

  template <class Engine>
  void reset(Engine& engine) {
    for (std::size_t n = 0; n < bands_.size(); ++n) {
      states_[n] = sample_initial_state(bands_[n], engine);
    }
  }

  template <class Engine>
  void advance(Engine& engine) {
    for (std::size_t n = 0; n < bands_.size(); ++n) {
      const StepResult r = step(bands_[n], states_[n], engine);
      states_[n] = r.state;
      rewards_[n] = r.reward;
    }
  }

  std::size_t size() const { return bands_.size(); }
  std::span<const BandState> states() const { return states_; }
  std::span<const double> rewards() const { return rewards_; }
  double reward(std::size_t n) const { return rewards_[n]; }

 private:
  std::vector<BandModel> bands_;
  std::vector<BandState> states_;
  std::vector<double> rewards_;
};

}  // namespace rmab

#endif  // RMAB_ENV_HPP_
