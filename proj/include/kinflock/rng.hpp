// rng.hpp -- counter-based deterministic random streams.
//
// Every draw is a pure function of (seed, stream, counter), so noise paths are
// independent of evaluation order and identical across reruns with one seed.

#pragma once

#include <cmath>
#include <cstdint>

namespace kinflock {

inline std::uint64_t mix64(std::uint64_t z) {  // splitmix64 finalizer
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = mix64(z ^ mix64(stream + 0x9e3779b97f4a7c15ULL));
  z = mix64(z ^ mix64(counter + 0x632be59bd9b4e019ULL));
  return z;
}

// uniform in the open interval (0,1); never returns 0 (safe under log)
inline double u01(std::uint64_t h) {
  return (double)(h >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

// standard normal via Box-Muller on two counter draws
inline double normal_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const double u1 = u01(counter_hash(seed, stream, 2 * counter));
  const double u2 = u01(counter_hash(seed, stream, 2 * counter + 1));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// sequential uniform stream (for sampling initial data)
struct UniformStream {
  std::uint64_t seed;
  std::uint64_t stream;
  std::uint64_t n = 0;
  double next() { return u01(counter_hash(seed, stream, n++)); }
};

}  // namespace kinflock
