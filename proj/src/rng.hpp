#pragma once

// Seeded generators for the samplers. Sequences depend only on the seed, not
// on the platform: mt19937_64 is fully specified, and the normal/gamma draws
// are generated by fixed rejection schemes rather than std::distributions.

#include <cmath>
#include <cstdint>
#include <random>

namespace chaosgamma::detail {

/// splitmix64 finalizer; used as the seed ^ stream-index mix.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(mix64(seed)) {}

  double uniform01() {  // in (0,1), 53-bit
    std::uint64_t u;
    do {
      u = gen_() >> 11;
    } while (u == 0);
    return static_cast<double>(u) * 0x1.0p-53;
  }

  double uniform_sym() { return 2.0 * uniform01() - 1.0; }  // in (-1,1)

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = uniform_sym();
      v = uniform_sym();
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
  }

  /// StandardGamma(shape), rate 1, via Marsaglia-Tsang squeeze rejection;
  /// shapes below 1 use the boost Gamma(s) = Gamma(s+1) * U^(1/s).
  double standard_gamma(double shape) {
    if (shape < 1.0) {
      double u = uniform01();
      return standard_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      double u = uniform01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Samples are generated in fixed-size blocks; block s of a run with seed
/// `seed` always uses Rng(mix64(seed ^ s)), so any parallel split over blocks
/// reproduces the serial output bit for bit.
inline constexpr std::size_t kSampleBlock = 4096;

inline Rng block_rng(std::uint64_t seed, std::uint64_t block_index) {
  return Rng(mix64(seed ^ block_index));
}

}  // namespace chaosgamma::detail
