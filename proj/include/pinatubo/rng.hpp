#pragma once

#include <cstdint>
#include <random>

namespace pinatubo {

using RngStream = std::mt19937_64;

/// splitmix64 finalizer. Decorrelates nearby integer inputs.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed for the index-th independent stream derived from base.
/// Used to split Monte Carlo trials so they can run in any order (or in
/// parallel) while staying reproducible.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix_seed(base ^ mix_seed(index));
}

}  // namespace pinatubo
