#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <string>

namespace navrl {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Used to derive independent stream seeds from a base seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed streams. Every consumer of randomness gets its own stream so that
/// adding draws in one place never shifts another.
enum class SeedStream : std::uint64_t {
  NetworkInit = 1,
  Environment = 2,
  Exploration = 3,
  Replay = 4,
  Evaluation = 5,
  Rollout = 6,
};

/// Counter-based derivation: seed(base, stream, index) = splitmix64(splitmix64(base ^ stream·φ) + index).
/// Depends only on its arguments, so episode i of an evaluation gets the same seed
/// no matter which worker runs it.
constexpr std::uint64_t derive_seed(std::uint64_t base, SeedStream stream,
                                    std::uint64_t index = 0) noexcept {
  const auto s = static_cast<std::uint64_t>(stream);
  return splitmix64(splitmix64(base ^ (s * 0x9E3779B97F4A7C15ULL)) + index);
}

/// Uniform double in [0, 1) from the top 53 bits. Unlike std::uniform_real_distribution
/// this is identical across standard library implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, n) by rejection, n > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r = rng();
  while (r >= limit) r = rng();
  return r % n;
}

inline std::string save_rng(const Rng& rng) {
  std::ostringstream out;
  out << rng;
  return out.str();
}

inline Rng load_rng(const std::string& state) {
  Rng rng;
  std::istringstream in(state);
  in >> rng;
  return rng;
}

}  // namespace navrl
