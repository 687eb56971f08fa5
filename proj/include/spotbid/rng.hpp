#pragma once

#include <cstdint>

namespace spotbid {

/// SplitMix64 (Steele, Lea & Flood 2014), the generator behind Java's
/// SplittableRandom. Fixed algorithm with integer-only state transitions, so
/// a seed produces the same stream on every platform and compiler.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  constexpr double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Independent child stream seeded from this one.
  constexpr SplitMix64 split() noexcept { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

}  // namespace spotbid
