#pragma once

#include <cstdint>
#include <initializer_list>

namespace jsrec {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed from a base seed and a tuple of
/// coordinates, e.g. (k, trial). Order-sensitive.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coords) {
  std::uint64_t h = splitmix64(base);
  for (std::uint64_t c : coords) h = splitmix64(h ^ splitmix64(c + 0x632be59bd9b4e019ULL));
  return h;
}

}  // namespace jsrec
