#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace oslr {

/// Seeded random source with fixed, portable distribution algorithms.
///
/// The standard library leaves normal/uniform distribution algorithms
/// implementation-defined; trials must be reproducible bit-for-bit from
/// (config, seed), so the transforms live here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  /// Uniform double in [0, 1). 53 mantissa bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
  int below(int n) {
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t v = eng_();
    while (v >= limit) v = eng_();
    return static_cast<int>(v % un);
  }

  int sign() { return (eng_() & 1u) ? 1 : -1; }

  /// Box-Muller; consumes two uniforms per pair of normals.
  double normal(double mean = 0.0, double sd = 1.0) {
    if (have_spare_) {
      have_spare_ = false;
      return mean + sd * spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(two_pi * u2);
    have_spare_ = true;
    return mean + sd * r * std::cos(two_pi * u2);
  }

  /// Derive a decorrelated seed for a named substream (splitmix64 finalizer).
  static std::uint64_t substream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace oslr
