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

// Arm-selection policies. Arms are 0-based here; time is 1-based and the
// first decision happens at t = 1.

#ifndef RMAB_POLICIES_HPP_
#define RMAB_POLICIES_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rmab {

using TimeIndex = std::uint64_t;

/// Per-arm sufficient statistics shared by every index policy.
///
/// Sample means are kept as compensated (Neumaier) sums and divided on read,
/// so a mean after 10^6 updates is exact to ~1 ulp.
class PolicyState {
 public:
  explicit PolicyState(std::size_t n_arms)
      : counts_(n_arms, 0),
        sums_(n_arms, 0.0),
        compensation_(n_arms, 0.0),
        last_sensed_(n_arms, 0) {
    if (n_arms == 0) throw std::invalid_argument("n_arms must be >= 1");
  }

  /// Time of the next decision.
  TimeIndex t() const { return t_; }
  std::size_t n_arms() const { return counts_.size(); }
  std::uint64_t count(std::size_t arm) const { return counts_[arm]; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  TimeIndex last_sensed(std::size_t arm) const { return last_sensed_[arm]; }

  /// Arithmetic mean of the rewards observed on `arm`; 0 if never sensed.
  double mean_reward(std::size_t arm) const {
    if (counts_[arm] == 0) return 0.0;
    return (sums_[arm] + compensation_[arm]) /
           static_cast<double>(counts_[arm]);
  }

  /// Records `reward` for `arm` at the current time and advances the clock.
  void update(std::size_t arm, double reward) {
    if (arm >= counts_.size()) {
      throw std::out_of_range("arm index " + std::to_string(arm) +
                              " out of range");
    }
    if (!(reward >= 0.0 && reward <= 1.0)) {
      throw std::invalid_argument("reward must be in [0,1], got " +
                                  std::to_string(reward));
    }
    const double sum = sums_[arm];
    const double next = sum + reward;
    if (std::abs(sum) >= std::abs(reward)) {
      compensation_[arm] += (sum - next) + reward;
    } else {
      compensation_[arm] += (reward - next) + sum;
    }
    sums_[arm] = next;
    ++counts_[arm];
    last_sensed_[arm] = t_;
    ++t_;
  }

 private:
  TimeIndex t_ = 1;
  std::vector<std::uint64_t> counts_;
  std::vector<double> sums_;
  std::vector<double> compensation_;
  std::vector<TimeIndex> last_sensed_;
};

inline void update(PolicyState& state, std::size_t arm, double reward) {
  state.update(arm, reward);
}

/// Exploration bonus sqrt(ln(t / tau)) of an arm last sensed at tau.
inline double confidence_term(TimeIndex t, TimeIndex tau) {
  if (tau == 0 || tau > t) {
    throw std::invalid_argument("confidence_term requires 1 <= tau <= t (t=" +
                                std::to_string(t) +
                                ", tau=" + std::to_string(tau) + ")");
  }
  return std::sqrt(std::log(static_cast<double>(t) / static_cast<double>(tau)));
}

namespace detail {

/// Round-robin initialization: arm t-1 for t = 1..N.
inline std::optional<std::size_t> initialization_arm(const PolicyState& s) {
  if (s.t() <= s.n_arms()) return static_cast<std::size_t>(s.t() - 1);
  return std::nullopt;
}

/// Lowest-index argmax of score(n).
template <class Score>
std::size_t argmax_arm(std::size_t n_arms, Score&& score) {
  std::size_t best = 0;
  double best_value = score(std::size_t{0});
  for (std::size_t n = 1; n < n_arms; ++n) {
    const double v = score(n);
    if (v > best_value) {
      best_value = v;
      best = n;
    }
  }
  return best;
}

}  // namespace detail

/// Index of the proposed policy: sample mean plus sqrt(ln(t / tau_n)).
inline double proposed_index(const PolicyState& s, std::size_t arm) {
  return s.mean_reward(arm) + confidence_term(s.t(), s.last_sensed(arm));
}

/// Senses every arm once, then the arm with the largest
/// mean + sqrt(ln(t / last_sensed)).
inline std::size_t select_arm_proposed(const PolicyState& s) {
  if (auto arm = detail::initialization_arm(s)) return *arm;
  const double t = static_cast<double>(s.t());
  return detail::argmax_arm(s.n_arms(), [&](std::size_t n) {
    return s.mean_reward(n) +
           std::sqrt(std::log(t / static_cast<double>(s.last_sensed(n))));
  });
}

/// UCB1: mean + sqrt(2 ln t / T_n) after one round-robin pass.
inline std::size_t select_arm_ucb1(const PolicyState& s) {
  if (auto arm = detail::initialization_arm(s)) return *arm;
  const double two_log_t = 2.0 * std::log(static_cast<double>(s.t()));
  return detail::argmax_arm(s.n_arms(), [&](std::size_t n) {
    return s.mean_reward(n) +
           std::sqrt(two_log_t / static_cast<double>(s.count(n)));
  });
}

inline std::size_t select_arm_oracle(const PolicyState& /*state*/,
                                     std::size_t oracle_arm) {
  return oracle_arm;
}

/// Exploration budget D(t) of DSEE: a constant or ln t.
struct DseeBudget {
  enum class Kind { kConstant, kLogTime };
  Kind kind = Kind::kConstant;
  double value = 10.0;  // kConstant only

  static DseeBudget constant(double d) { return {Kind::kConstant, d}; }
  static DseeBudget log_time() { return {Kind::kLogTime, 0.0}; }

  double at(TimeIndex t) const {
    return kind == Kind::kConstant ? value : std::log(static_cast<double>(t));
  }

  bool operator==(const DseeBudget&) const = default;
};

/// Epoch bookkeeping for DSEE.
///
/// Exploration epoch k lasts N * 4^(k-1) steps and plays each arm for a
/// contiguous block of 4^(k-1) steps, in arm order. Exploitation epoch k
/// lasts 2 * 4^(k-1) steps on the arm with the best exploration-only sample
/// mean. At each epoch boundary an exploration epoch starts iff
/// X(t) < D(t) * ln t, X being the number of exploration steps so far. The
/// first epoch is always an exploration epoch.
class DseeSchedule {
 public:
  enum class Phase { kNone, kExploration, kExploitation };

  DseeSchedule(std::size_t n_arms, DseeBudget budget)
      : n_arms_(n_arms),
        budget_(budget),
        explore_sums_(n_arms, 0.0),
        explore_counts_(n_arms, 0) {
    if (n_arms == 0) throw std::invalid_argument("n_arms must be >= 1");
    if (budget.kind == DseeBudget::Kind::kConstant && !(budget.value >= 0.0)) {
      throw std::invalid_argument("DSEE parameter D must be >= 0");
    }
  }

  /// Arm to play at time `t`; starts a new epoch when the current one is
  /// exhausted.
  std::size_t next_arm(TimeIndex t) {
    if (remaining_ == 0) start_epoch(t);
    --remaining_;
    const std::uint64_t offset = position_++;
    if (phase_ == Phase::kExploration) {
      ++exploration_steps_;
      return static_cast<std::size_t>(offset / block_);
    }
    return exploit_arm_;
  }

  /// Reward of the arm returned by the last next_arm() call.
  void observe(std::size_t arm, double reward) {
    if (phase_ != Phase::kExploration) return;
    explore_sums_[arm] += reward;
    ++explore_counts_[arm];
  }

  Phase phase() const { return phase_; }
  std::uint64_t exploration_epochs() const { return exploration_epochs_; }
  std::uint64_t exploitation_epochs() const { return exploitation_epochs_; }
  std::uint64_t exploration_steps() const { return exploration_steps_; }
  std::uint64_t epoch_length() const { return epoch_length_; }
  std::uint64_t remaining() const { return remaining_; }

  double exploration_mean(std::size_t arm) const {
    return explore_counts_[arm] == 0
               ? 0.0
               : explore_sums_[arm] / static_cast<double>(explore_counts_[arm]);
  }

 private:
  static std::uint64_t pow4(std::uint64_t exponent) {
    // 4^31 already exceeds any horizon this library can reach.
    if (exponent > 31) exponent = 31;
    return std::uint64_t{1} << (2 * exponent);
  }

  void start_epoch(TimeIndex t) {
    const double threshold =
        budget_.at(t) * std::log(static_cast<double>(t));
    const bool explore =
        exploration_epochs_ == 0 ||
        static_cast<double>(exploration_steps_) < threshold;
    position_ = 0;
    if (explore) {
      phase_ = Phase::kExploration;
      block_ = pow4(exploration_epochs_++);
      epoch_length_ = block_ * n_arms_;
    } else {
      phase_ = Phase::kExploitation;
      epoch_length_ = 2 * pow4(exploitation_epochs_++);
      exploit_arm_ = detail::argmax_arm(
          n_arms_, [this](std::size_t n) { return exploration_mean(n); });
    }
    remaining_ = epoch_length_;
  }

  std::size_t n_arms_;
  DseeBudget budget_;
  Phase phase_ = Phase::kNone;
  std::uint64_t exploration_epochs_ = 0;
  std::uint64_t exploitation_epochs_ = 0;
  std::uint64_t exploration_steps_ = 0;
  std::uint64_t epoch_length_ = 0;
  std::uint64_t remaining_ = 0;
  std::uint64_t position_ = 0;
  std::uint64_t block_ = 1;
  std::size_t exploit_arm_ = 0;
  std::vector<double> explore_sums_;
  std::vector<std::uint64_t> explore_counts_;
};

inline std::size_t select_arm_dsee(const PolicyState& s, DseeSchedule& schedule) {
  return schedule.next_arm(s.t());
}

enum class PolicyType { kProposed, kUcb1, kDsee, kOracle };

inline const char* policy_name(PolicyType type) {
  switch (type) {
    case PolicyType::kProposed:
      return "proposed";
    case PolicyType::kUcb1:
      return "ucb1";
    case PolicyType::kDsee:
      return "dsee";
    case PolicyType::kOracle:
      return "oracle";
  }
  return "unknown";
}

/// Policy selection plus its parameters.
struct PolicyKind {
  PolicyType type = PolicyType::kProposed;
  DseeBudget dsee_budget;                 // kDsee only
  std::optional<std::size_t> oracle_arm;  // kOracle only; unset = best arm

  static PolicyKind proposed() { return {PolicyType::kProposed, {}, {}}; }
  static PolicyKind ucb1() { return {PolicyType::kUcb1, {}, {}}; }
  static PolicyKind dsee(DseeBudget budget) {
    return {PolicyType::kDsee, budget, {}};
  }
  static PolicyKind oracle(std::optional<std::size_t> arm = std::nullopt) {
    return {PolicyType::kOracle, {}, arm};
  }

  bool operator==(const PolicyKind&) const = default;
};

// Stateful wrappers with a common select/observe shape so that the episode
// loop can be instantiated once per policy type.

struct ProposedPolicy {
  std::size_t select(const PolicyState& s) { return select_arm_proposed(s); }
  void observe(std::size_t, double) {}
};

struct Ucb1Policy {
  std::size_t select(const PolicyState& s) { return select_arm_ucb1(s); }
  void observe(std::size_t, double) {}
};

struct DseePolicy {
  DseeSchedule schedule;
  std::size_t select(const PolicyState& s) {
    return select_arm_dsee(s, schedule);
  }
  void observe(std::size_t arm, double reward) {
    schedule.observe(arm, reward);
  }
};

struct OraclePolicy {
  std::size_t arm;
  std::size_t select(const PolicyState& s) {
    return select_arm_oracle(s, arm);
  }
  void observe(std::size_t, double) {}
};

using Policy = std::variant<ProposedPolicy, Ucb1Policy, DseePolicy, OraclePolicy>;

/// Instantiates a policy. `resolved_oracle_arm` is used when the kind is
/// Oracle and no arm was pinned.
inline Policy make_policy(const PolicyKind& kind, std::size_t n_arms,
                          std::size_t resolved_oracle_arm = 0) {
  switch (kind.type) {
    case PolicyType::kProposed:
      return ProposedPolicy{};
    case PolicyType::kUcb1:
      return Ucb1Policy{};
    case PolicyType::kDsee:
      return DseePolicy{DseeSchedule(n_arms, kind.dsee_budget)};
    case PolicyType::kOracle: {
      const std::size_t arm = kind.oracle_arm.value_or(resolved_oracle_arm);
      if (arm >= n_arms) throw std::invalid_argument("oracle arm out of range");
      return OraclePolicy{arm};
    }
  }
  throw std::invalid_argument("unknown policy type");
}

}  // namespace rmab

#endif  // RMAB_POLICIES_HPP_
