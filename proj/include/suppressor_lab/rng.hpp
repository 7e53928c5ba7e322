/*
 * Copyright 2026 The suppressor-lab authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace suppressor_lab {

/// Default seed used by the CLI and the harness when none is given.
inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// SplitMix64 finalizer (Steele et al.); full 64-bit avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent stream seed from a base seed and a tag.
/// Chain calls to mix in more than one tag.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) noexcept {
  return mix64(base ^ mix64(tag ^ 0x5851f42d4c957f2dULL));
}

/// Counter-based generator: output i is a pure function of (key, i), so any
/// position in the stream can be addressed directly and samples drawn for
/// record i never depend on how many records were drawn before it.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(derive_seed(seed, stream)) {}

  void seek(std::uint64_t counter) noexcept { counter_ = counter; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept { return mix64(key_ ^ mix64(counter_++)); }

  /// Uniform draw in (0, 1]; never 0, safe under log().
  double next_uniform() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n), n >= 1. Multiply-shift bound; bias < n / 2^64.
  std::uint64_t next_below(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// Box-Muller pair of independent standard normals (consumes two counters).
  std::pair<double, double> next_normal_pair() noexcept {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

  double next_normal() noexcept { return next_normal_pair().first; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace suppressor_lab
