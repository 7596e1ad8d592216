#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace treebo {

// splitmix64 step; used to derive independent stream seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1) with 53 random bits. Hand-rolled (instead of
// std::uniform_real_distribution) so that output streams are identical across
// standard libraries.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller, cosine branch only: one value per call, no
// cached state, so consumption of the underlying stream stays predictable.
inline double normal01(std::mt19937_64& g) {
  double u1 = uniform01(g);
  while (u1 <= 0.0) u1 = uniform01(g);
  const double u2 = uniform01(g);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(6.283185307179586476925286766559 * u2);
}

// Uniform integer in [0, n); n must be positive.
inline std::size_t uniform_below(std::mt19937_64& g, std::size_t n) {
  const auto k = static_cast<std::size_t>(uniform01(g) * static_cast<double>(n));
  return k < n ? k : n - 1;
}

// Independent per-purpose RNG streams derived from one master seed, so that
// perturbing e.g. the zoom randomness leaves the initial design untouched.
struct SeedStreams {
  std::mt19937_64 init;       // initial design + random-search draws
  std::mt19937_64 structure;  // Gibbs / mutation sampling
  std::mt19937_64 zoom;       // representative points in the zooming maximizer
  std::mt19937_64 noise;      // observation noise
  std::mt19937_64 objective;  // objective instantiation (e.g. GP draws)

  explicit SeedStreams(std::uint64_t master) {
    std::uint64_t s = master;
    init.seed(splitmix64(s));
    structure.seed(splitmix64(s));
    zoom.seed(splitmix64(s));
    noise.seed(splitmix64(s));
    objective.seed(splitmix64(s));
  }
};

}  // namespace treebo
