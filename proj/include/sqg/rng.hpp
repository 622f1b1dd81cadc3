#pragma once

#include <cstdint>

namespace sqg {

/// splitmix64 finalizer; spreads nearby seeds over the whole state space.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream id for trial `trial` of a run seeded with `seed`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return mix_seed(seed ^ mix_seed(trial + 0x632be59bd9b4e019ULL));
}

}  // namespace sqg
