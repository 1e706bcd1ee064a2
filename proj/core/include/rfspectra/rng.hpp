#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace rfspectra {

// splitmix64 step; used to expand seeds and to derive independent sub-streams.
constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Large odd constant multiplying the trial index when deriving trial streams.
inline constexpr std::uint64_t kStreamSeedStride = 0x9e3779b97f4a7c15ULL;

/// Seed of the independent stream for trial `index`: seed xor (index * odd constant).
constexpr std::uint64_t stream_seed(std::uint64_t base,
                                    std::uint64_t index) noexcept {
  return base ^ (index * kStreamSeedStride);
}

/// xoshiro256** (Blackman & Vigna), state expanded from the seed via splitmix64.
/// Fixed in-repo so that identical seeds reproduce identical streams on every
/// platform and under any thread schedule.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) noexcept {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64_next(s);
  }

  std::uint64_t next() noexcept {
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

  /// Uniform double in [0, 1), 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double uniform01_positive() noexcept {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  /// Fair sign, +1.0 or -1.0.
  double sign() noexcept { return (next() >> 63) ? -1.0 : 1.0; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

/// Standard normal draws via the Box-Muller transform (two uniforms to two
/// normals); the second normal of each pair is cached. Sequential and
/// deterministic given the underlying stream.
class NormalSampler {
 public:
  explicit NormalSampler(Xoshiro256& rng) noexcept : rng_(&rng) {}

  double next() noexcept {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = rng_->uniform01_positive();
    const double u2 = rng_->uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = kTwoPi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  static constexpr double kTwoPi = 6.283185307179586476925286766559;

  Xoshiro256* rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace rfspectra
