#pragma once

#include <cstdint>

namespace ldcoh {

// Counter-based splitmix64. Stateless: draw i from stream `seed` as
// splitmix64(seed, i). Reproducible regardless of evaluation order, which
// keeps seeded generation deterministic under any worker count.
inline uint64_t splitmix64(uint64_t seed, uint64_t counter) {
  uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1), 53 random bits.
inline double u01(uint64_t seed, uint64_t counter) {
  return static_cast<double>(splitmix64(seed, counter) >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Fixed-point multiply; the tiny modulo bias of
// naive % is avoided, and the map is monotone in the raw draw.
inline uint64_t uniform_index(uint64_t seed, uint64_t counter, uint64_t n) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(splitmix64(seed, counter)) * n) >> 64);
}

}  // namespace ldcoh
