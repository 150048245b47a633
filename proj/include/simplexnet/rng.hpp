// Copyright 2026 The simplexnet Authors
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

#pragma once

#include <cstdint>
#include <limits>
#include <utility>

#include "simplexnet/errors.hpp"

namespace simplexnet {

/// PCG-XSH-RR generator: 64-bit LCG state, 32-bit permuted output
/// (O'Neill's pcg32). Satisfies UniformRandomBitGenerator.
///
/// The library never feeds this into <random> distributions, whose output is
/// implementation-defined; the helpers below fix the exact draw sequence so
/// a seed reproduces the same run on any conforming toolchain.
class Pcg32 {
 public:
  using result_type = std::uint32_t;

  static constexpr std::uint64_t kDefaultStream = 0xda3e39cb94b95bdbULL;

  explicit Pcg32(std::uint64_t seed = 0, std::uint64_t stream = kDefaultStream)
      : state_(0), inc_((stream << 1u) | 1u) {
    next();
    state_ += seed;
    next();
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return next(); }

  std::uint64_t next64() {
    const std::uint64_t hi = next();
    return (hi << 32) | next();
  }

  /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw UsageError("Pcg32::below: bound must be positive");
    if (bound <= 0xffffffffULL) {
      const auto b = static_cast<std::uint32_t>(bound);
      std::uint64_t m = static_cast<std::uint64_t>(next()) * b;
      auto low = static_cast<std::uint32_t>(m);
      if (low < b) {
        const std::uint32_t threshold = static_cast<std::uint32_t>(-b) % b;
        while (low < threshold) {
          m = static_cast<std::uint64_t>(next()) * b;
          low = static_cast<std::uint32_t>(m);
        }
      }
      return m >> 32;
    }
    // Wide bounds never occur on the hot paths; plain rejection is enough.
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = next64();
    while (x >= limit) x = next64();
    return x % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t state() const { return state_; }
  std::uint64_t increment() const { return inc_; }

  friend bool operator==(const Pcg32&, const Pcg32&) = default;

 private:
  result_type next() {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const auto xorshifted =
        static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
  }

  std::uint64_t state_;
  std::uint64_t inc_;
};

/// SplitMix64 finalizer, used to derive independent seeds from (seed, index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Fisher-Yates over any random-access range, driven by Pcg32::below.
template <typename RandomIt>
void shuffle(RandomIt first, RandomIt last, Pcg32& rng) {
  const auto n = last - first;
  for (auto i = n - 1; i > 0; --i) {
    const auto j = static_cast<decltype(i)>(
        rng.below(static_cast<std::uint64_t>(i) + 1));
    using std::swap;
    swap(first[i], first[j]);
  }
}

}  // namespace simplexnet
