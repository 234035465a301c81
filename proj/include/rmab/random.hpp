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

#ifndef RMAB_RANDOM_HPP_
#define RMAB_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace rmab {

/// Engine used for every stochastic draw. The output sequence of
/// std::mt19937_64 is fixed by the standard, so runs are portable.
using Rng = std::mt19937_64;

/// Substream tags for seed splitting.
enum class Stream : std::uint64_t {
  kEnvironment = 1,
  kPolicy = 2,
};

/// SplitMix64 finalizer applied to `x + golden`. Stable across releases;
/// changing it changes every simulated number.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Child seed for one (run, stream) pair:
///   h = mix64(master); h = mix64(h ^ run_index); h = mix64(h ^ tag)
/// Each run owns its streams, so results do not depend on which thread
/// executes the run or in which order runs complete.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed,
                                    std::uint64_t run_index,
                                    Stream stream) noexcept {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ run_index);
  return mix64(h ^ static_cast<std::uint64_t>(stream));
}

inline Rng make_stream(std::uint64_t master_seed, std::uint64_t run_index,
                       Stream stream) {
  return Rng{derive_seed(master_seed, run_index, stream)};
}

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
/// std::uniform_real_distribution is implementation-defined, this is not.
template <class Engine>
double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace rmab

#endif  // RMAB_RANDOM_HPP_
