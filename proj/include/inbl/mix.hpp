#pragma once

#include <cstdint>

namespace inbl {

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Keyed hash of a counter; the stateless draw behind every random stream.
constexpr std::uint64_t keyed_draw(std::uint64_t key, std::uint64_t counter) {
  return mix64(mix64(counter ^ key) + (key ^ 0x9e3779b97f4a7c15ULL));
}

// Seed for trial `index` of an experiment seeded with `seed`.
constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0xd1b54a32d192ed03ULL));
}

}  // namespace inbl
