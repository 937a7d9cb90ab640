#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace chebzero {

/// SplitMix64 finalizer, used to derive independent substream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed of the substream labelled by (seed, labels...).
inline std::uint64_t substream_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> labels) {
  std::uint64_t s = splitmix64(seed);
  for (std::uint64_t l : labels) s = splitmix64(s ^ splitmix64(l + 0x632BE59BD9B4E019ull));
  return s;
}

using Rng = std::mt19937_64;

}  // namespace chebzero
