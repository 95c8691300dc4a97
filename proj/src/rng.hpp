#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace voxplore {

/// Deterministic random generator used everywhere randomness is needed.
///
/// The generator is SplitMix64 (Steele, Lea, Flood 2014): a 64-bit counter
/// advanced by the golden-gamma constant and finalized with two xor-shift
/// multiplies. It is fully specified by the seed, has no platform-dependent
/// state, and supports cheap stream splitting: `stream(label)` derives an
/// independent generator by hashing the label (FNV-1a) into the current seed.
/// Subsystems draw from named streams ("layout", "fire", "sensor-noise", ...)
/// so that adding draws to one subsystem never perturbs another.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n). Rejection-free modulo is fine for the small n used here.
  std::uint64_t next_below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Independent child stream named by `label`.
  Rng stream(std::string_view label) const {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char c : label) {
      h ^= static_cast<std::uint8_t>(c);
      h *= 0x100000001B3ULL;
    }
    return Rng(state_ ^ h);
  }

 private:
  std::uint64_t state_;
};

}  // namespace voxplore
