// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rng.hpp
 * @brief Counter-based random streams.
 *
 * Every draw is a pure function of (root seed, shot index, site, draw
 * counter), hashed with the SplitMix64 finalizer. Shot records are therefore
 * bitwise reproducible regardless of how shots are distributed over workers.
 */

#pragma once

#include <cstdint>
#include <limits>

namespace modent {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit_interval(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// One stream, identified by (seed, shot, site). Satisfies
/// UniformRandomBitGenerator.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  constexpr StreamRng(std::uint64_t seed, std::uint64_t shot, std::uint64_t site) noexcept
      : key_(splitmix64(splitmix64(splitmix64(seed) ^ shot) ^ (site * 0xD6E8FEB86659FD93ull))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept { return splitmix64(key_ + counter_++); }

  constexpr double uniform() noexcept { return to_unit_interval((*this)()); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_{0};
};

/// Root of a family of streams.
class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  [[nodiscard]] constexpr std::uint64_t seed() const noexcept { return seed_; }

  [[nodiscard]] constexpr StreamRng stream(std::uint64_t shot, std::uint64_t site) const noexcept {
    return {seed_, shot, site};
  }

  /// First draw of stream (shot, site) as a uniform double.
  [[nodiscard]] constexpr double uniform(std::uint64_t shot, std::uint64_t site) const noexcept {
    return stream(shot, site).uniform();
  }

 private:
  std::uint64_t seed_;
};

}  // namespace modent
