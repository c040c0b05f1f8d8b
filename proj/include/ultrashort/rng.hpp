#pragma once

// Counter-based generator: every draw is a pure function of
// (seed, stream tag, stream index, counter), so results do not depend on how
// work is split across threads.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ultrashort {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Stream tags; one per consumer so that streams never collide.
enum class Stream : std::uint64_t {
  RootSplitting = 1,
  MultiParam = 2,
  Torus = 3,
  SatoTate = 4,
  Haar = 5,
  Involution = 6,
  TestVectors = 7,
};

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, Stream stream, std::uint64_t index)
      : key_(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream) ^ splitmix64(index)))) {}

  std::uint64_t next_u64() { return splitmix64(key_ + (counter_++) * 0xD1B54A32D192ED03ULL); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
    for (;;) {
      std::uint64_t x = next_u64();
      unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
      if (static_cast<std::uint64_t>(m) >= limit) return static_cast<std::uint64_t>(m >> 64);
    }
  }

  /// Standard normal via Box-Muller (one output per two uniforms).
  double normal() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ultrashort
