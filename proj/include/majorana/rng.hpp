#pragma once

#include <cstdint>

namespace majorana::rng {

// Counter-based generator built from the splitmix64 output stage. Every draw is
// a pure function of (seed, stream identifiers), so parallel evaluation order
// cannot change results.

inline constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t x) {
  x += golden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Word for stream (a, b) under `seed`. The +1 offsets keep (0, 0) from
// collapsing onto the bare seed chain.
inline constexpr std::uint64_t stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(mix64(seed) + (a + 1) * golden) + (b + 1) * golden);
}

// Map to the open interval (0, 1); the +0.5 shift excludes both endpoints.
inline constexpr double uniform_open01(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform on (lo, hi).
inline constexpr double uniform(std::uint64_t x, double lo, double hi) {
  return lo + (hi - lo) * uniform_open01(x);
}

}  // namespace majorana::rng
