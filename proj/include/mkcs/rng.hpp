#pragma once

#include <cstdint>
#include <random>

namespace mkcs {

// All randomness in the library flows through the two pieces below so that
// results are bit-reproducible across platforms and standard libraries:
//
//  * streams come from std::mt19937_64, whose algorithm is fixed by the
//    C++ standard;
//  * variates are derived from raw 64-bit draws by hand, because the
//    std::uniform_*_distribution adaptors are implementation-defined.

/// SplitMix64 step (Steele, Lea, Flood 2014). Used for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Folds a sequence of values into one 64-bit seed: state is chained
/// through splitmix64, one step per part. Order-sensitive.
inline std::uint64_t seed_combine(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t state = 0;
  for (std::uint64_t p : parts) state = splitmix64(state ^ p);
  return state;
}

/// Bit pattern of a double, for hashing real-valued parameters.
inline std::uint64_t double_bits(double v) {
  std::uint64_t u;
  static_assert(sizeof(u) == sizeof(v));
  __builtin_memcpy(&u, &v, sizeof(u));
  return u;
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_real(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform01(gen);
}

/// Uniform integer in [0, bound) by rejection; bound must be positive.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t draw;
  do {
    draw = gen();
  } while (draw >= limit);
  return draw % bound;
}

}  // namespace mkcs
