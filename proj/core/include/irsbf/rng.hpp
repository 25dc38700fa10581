#pragma once

#include <cstdint>
#include <random>

namespace irsbf {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of an independent substream: mix64(master ^ mix64(index)) further
/// split by a small purpose tag. Depends only on its arguments, so results do
/// not change with the number of workers.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index,
                                       std::uint64_t purpose = 0) {
  return mix64(mix64(master ^ mix64(index)) + purpose);
}

inline Rng make_rng(std::uint64_t master, std::uint64_t index, std::uint64_t purpose = 0) {
  return Rng(substream_seed(master, index, purpose));
}

}  // namespace irsbf
