#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace permlab {

namespace detail {

// SplitMix64 finalizer (Vigna). Used for seeding and for stream derivation.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  return mix64(state);
}

constexpr std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/// Stream roles for positional seed derivation. Streams derived with
/// different tags (or indices) are statistically independent.
enum class StreamTag : std::uint64_t {
  unitary = 0x11,      // Haar matrix draws
  subensemble = 0x22,  // one stream per sub-ensemble
  estimator = 0x33,    // per-matrix estimator master seeds
  sweep_point = 0x44,  // per-sweep-point master seeds
  generic = 0x55,
};

/// Derives the seed for stream (tag, index) from a master seed.
/// Purely positional: independent of evaluation order and thread schedule.
constexpr std::uint64_t derive_stream_seed(std::uint64_t master, StreamTag tag, std::uint64_t index) {
  std::uint64_t x = detail::mix64(master + 0x9E3779B97F4A7C15ULL);
  x = detail::mix64(x + static_cast<std::uint64_t>(tag) * 0xBF58476D1CE4E5B9ULL);
  x = detail::mix64(x + index * 0x94D049BB133111EBULL);
  return x;
}

/// xoshiro256++ pseudo-random stream, seeded via SplitMix64.
///
/// All sampling primitives are implemented here against the raw 64-bit
/// output so that draws are bit-reproducible on any platform; nothing
/// depends on standard-library distributions.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = detail::splitmix64_next(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = detail::rotl64(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl64(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). Multiply-high mapping; the modulo bias
  /// is at most bound / 2^64 and irrelevant at the bounds used here.
  std::uint64_t next_index(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  /// Two independent standard normals (Box-Muller).
  void next_gaussian_pair(double& g0, double& g1) {
    const double u1 = 1.0 - next_unit_double();  // (0, 1]
    const double u2 = next_unit_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    g0 = radius * std::cos(angle);
    g1 = radius * std::sin(angle);
  }

 private:
  std::uint64_t state_[4];
};

}  // namespace permlab
