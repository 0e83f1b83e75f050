#pragma once

#include <cstdint>
#include <random>

namespace graphpos {

/// SplitMix64 finalizer; decorrelates consecutive trial seeds before they
/// reach the engine.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng{mix_seed(seed)}; }

/// Uniform real in [lo, hi) built from the raw 53-bit mantissa, so results
/// do not depend on the standard library's distribution implementation.
inline double uniform_real(Rng& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

/// Uniform integer in [lo, hi] (inclusive), rejection sampled.
inline std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return rng();
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
  std::uint64_t r = rng();
  while (r >= limit) r = rng();
  return lo + r % span;
}

}  // namespace graphpos
