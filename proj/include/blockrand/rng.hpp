// Copyright 2026 The blockrand Authors
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

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace blockrand {

/// SplitMix64 finalizer. Used to derive well-separated seeds from a master
/// seed and a stream id.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(master ^ mix64(stream));
}

/// Deterministic random source for every stochastic step in the library.
///
/// The raw engine is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard, and all derived draws (bounded integers, reals, normals,
/// Fisher-Yates shuffles) are implemented here rather than through
/// <random> distributions, whose sequences are implementation-defined.
/// Identical seeds therefore produce identical schedules, datasets and
/// initial weights on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n). Rejection sampling over a power-of-two mask,
  /// so the result is exactly uniform.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t mask = mask_for(n - 1);
    std::uint64_t v;
    do {
      v = engine_() & mask;
    } while (v >= n);
    return v;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double real01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * real01(); }

  /// Standard normal via Box-Muller; the paired value is cached.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    // real01() can return 0; shift into (0, 1] before the log.
    const double u1 = 1.0 - real01();
    const double u2 = real01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
  }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  static std::uint64_t mask_for(std::uint64_t v) {
    std::uint64_t mask = v;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    return mask;
  }

  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// Stream ids for derive_seed. One stream per independent random decision in
// a run, all hanging off the experiment's master seed.
namespace streams {
inline constexpr std::uint64_t kDataset = 1;
inline constexpr std::uint64_t kSplit = 2;
inline constexpr std::uint64_t kInit = 3;
inline constexpr std::uint64_t kSchedule = 4;
inline constexpr std::uint64_t kDropout = 5;
}  // namespace streams

}  // namespace blockrand
