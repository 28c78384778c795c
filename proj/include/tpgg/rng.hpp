#pragma once

#include <cstdint>
#include <random>

namespace tpgg {

/// Engine used by every simulation. mt19937_64 output is fixed by the
/// standard, and the helpers below avoid the implementation-defined
/// distributions, so a seed reproduces the same run on any toolchain.
using Rng = std::mt19937_64;

__extension__ using Uint128 = unsigned __int128;

/// Uniform integer in [0, n) by Lemire's multiply-and-reject method.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  std::uint64_t x = rng();
  auto m = static_cast<Uint128>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      x = rng();
      m = static_cast<Uint128>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// SplitMix64 finalizer; a bijection on 64-bit integers.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of one replica in a sweep. Injective in (grid_index, replica) for
/// indices below 2^32 and a fixed base seed.
constexpr std::uint64_t replica_seed(std::uint64_t base_seed, std::uint32_t grid_index,
                                     std::uint32_t replica) {
  const std::uint64_t key = (std::uint64_t(grid_index) << 32) | replica;
  return mix64(mix64(base_seed) ^ key);
}

}  // namespace tpgg
