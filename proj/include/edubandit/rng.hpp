#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace edubandit {

/// SplitMix64 finalizer. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of substream `index` under `base_seed`.
///
/// seed = mix64(base_seed + (index + 1) * 0x9E3779B97F4A7C15). The multiplier
/// is odd, so the affine map is injective modulo 2^64, and mix64 is a
/// bijection; distinct indices therefore always yield distinct seeds.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
  return mix64(base_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Portable deterministic generator: xoshiro256** seeded through SplitMix64.
///
/// The output sequence depends only on the 64-bit seed, so runs reproduce
/// bit-exactly across compilers and platforms. Not thread-safe; each run owns
/// its own stream.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) noexcept : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      sm += 0x9E3779B97F4A7C15ULL;
      word = mix64(sm);
    }
  }

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform over {0, ..., n-1}; consumes one uniform draw. n must be >= 1.
  std::size_t uniform_index(std::size_t n) noexcept { return scale_to_index(uniform(), n); }

  /// Index k with probability weights[k]; consumes one uniform draw.
  /// Weights are assumed nonnegative and summing to one.
  std::size_t categorical(std::span<const double> weights) noexcept {
    const double u = uniform();
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if (weights[k] <= 0.0) continue;
      last_positive = k;
      acc += weights[k];
      if (u < acc) return k;
    }
    return last_positive;
  }

  /// Maps u in [0, 1) onto {0, ..., n-1}.
  static std::size_t scale_to_index(double u, std::size_t n) noexcept {
    const auto k = static_cast<std::size_t>(u * static_cast<double>(n));
    return std::min(k, n - 1);
  }

  friend bool operator==(const RngStream&, const RngStream&) = default;

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace edubandit
