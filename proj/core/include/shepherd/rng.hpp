#pragma once

#include <array>
#include <cstdint>

#include "shepherd/vec2.hpp"

namespace shepherd {

/// SplitMix64 output finalizer. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Pseudo-random stream: xoshiro256** seeded through SplitMix64.
///
/// Every draw is produced from integer arithmetic plus std::sqrt and
/// std::log, so sequences are reproducible for a given seed. Normal
/// variates come from the Marsaglia polar method; unit vectors from
/// rejection sampling in the unit disc.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Mean 0, variance 1.
  double standard_normal();
  /// Two independent standard normal draws.
  Vec2 standard_normal2();
  /// Direction drawn uniformly on the unit circle.
  Vec2 uniform_unit_vector();

  /// Same seed and same position in the sequence.
  bool operator==(const Rng&) const = default;

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_{};
  double spare_normal_{0.0};
  bool has_spare_{false};
};

/// Seed of an independent child stream identified by `channel`.
constexpr std::uint64_t derive_stream_seed(std::uint64_t root, std::uint64_t channel) {
  return mix64(mix64(root ^ 0x6a09e667f3bcc909ULL) ^ (channel * 0x9e3779b97f4a7c15ULL));
}

}  // namespace shepherd
