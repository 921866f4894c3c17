#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace tagtime {

/// Seeded generator whose draws are identical on every platform: it uses
/// raw mt19937_64 output instead of the implementation-defined standard
/// distributions.
class StableRandom {
 public:
  explicit StableRandom(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound), bound > 0, by rejection sampling.
  std::uint64_t below(std::uint64_t bound) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = kMax - kMax % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tagtime
