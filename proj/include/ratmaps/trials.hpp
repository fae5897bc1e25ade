#pragma once

// Seeded Monte Carlo helpers shared by the certification commands.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "ratmaps/gaussian_rational.hpp"

namespace ratmaps {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED2024ULL;

/// splitmix64 finalizer; used to derive independent per-trial seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial) {
  return splitmix64(base ^ splitmix64(trial));
}

/// Runs body(trial, rng) for every trial on `jobs` threads. Each trial gets
/// its own generator seeded from (seed, trial), so results do not depend on
/// the thread count.
void run_trials(std::size_t trials, std::uint64_t seed, unsigned jobs,
                const std::function<void(std::size_t, std::mt19937_64&)>& body);

/// Uniform rational with |numerator| <= magnitude and denominator in [1, magnitude].
mpq_class random_rational(std::mt19937_64& rng, long magnitude);
GaussianRational random_gaussian_rational(std::mt19937_64& rng, long magnitude);

}  // namespace ratmaps
