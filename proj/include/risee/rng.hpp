#pragma once

#include <cstdint>
#include <random>

namespace risee {

// splitmix64 finalizer (Steele et al.); cheap and well mixed, used only to
// spread (seed, stream, index) tuples over the mt19937_64 seed space.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Disjoint draw sites. Setup geometry, per-run initialization and Monte Carlo
// realizations each get their own stream so that (a) a setup is reproducible
// no matter how many realizations were drawn before it, and (b) different
// strategies run on the same (seed, setup) consume identical init draws.
enum class Stream : std::uint64_t { setup = 1, init = 2, realization = 3 };

inline std::mt19937_64 substream(std::uint64_t seed, Stream s,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(s));
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return std::mt19937_64(h);
}

}  // namespace risee
