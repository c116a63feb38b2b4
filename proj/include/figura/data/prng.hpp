#pragma once

#include <cstdint>

namespace figura::data {

// SplitMix64 (Steele, Lea & Flood). Every seeded procedure in the toolkit
// draws from this generator so that seeds reproduce across platforms.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kMul1 = 0xBF58476D1CE4E5B9ULL;
  static constexpr std::uint64_t kMul2 = 0x94D049BB133111EBULL;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += kGamma);
    z = (z ^ (z >> 30)) * kMul1;
    z = (z ^ (z >> 27)) * kMul2;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound) by Lemire's multiply-and-reject. bound > 0.
  std::uint64_t bounded(std::uint64_t bound) noexcept;

  // Uniform double in [0, 1) from the top 53 bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Seed of the independent substream for (seed, index): the first output of a
// generator seeded with seed XOR (first output of a generator seeded with
// index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace figura::data
