#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace tscausal {

// All randomness flows through mt19937_64 plus the hand-rolled transforms
// below. The standard library distributions are implementation-defined, so
// they would break bit-reproducibility across standard libraries.
using Rng = std::mt19937_64;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace detail

// Deterministic per-task seed: hash of (master seed, task index). Parallel
// loops derive one child per index so results do not depend on scheduling.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
  return detail::splitmix64(master ^ detail::splitmix64(index + 1));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Uniform in [0, n) via the 128-bit multiply trick.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const unsigned __int128 m = static_cast<unsigned __int128>(rng()) * n;
  return static_cast<std::uint64_t>(m >> 64);
}

// Uniform integer in [lo, hi], inclusive.
inline long uniform_int(Rng& rng, long lo, long hi) {
  return lo + static_cast<long>(
                  uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller. Always consumes exactly two engine draws,
// which keeps streams aligned no matter where it is called.
inline double standard_normal(Rng& rng) {
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace tscausal
