#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "qgeom/linalg.hpp"

namespace qgeom {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Independent stream key for (base seed, a, b), e.g. (run seed, trial, purpose).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(base) ^ (a * 0xD1B54A32D192ED03ULL)) ^
                    (b * 0x8CB92BA72F3D8DD7ULL));
}

/// Counter-mode SplitMix64: draw i is splitmix64(key + i * golden). The
/// distributions below are written out so the streams are identical on every
/// platform and standard library.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() { return splitmix64(key_ + 0x9E3779B97F4A7C15ULL * counter_++); }

  /// Uniform on (0, 1].
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// (N(0,1) + i N(0,1)) / sqrt(2): unit variance complex Gaussian.
  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

  /// Exponential(1), for flat Dirichlet draws.
  double exponential() { return -std::log(uniform()); }

  [[nodiscard]] std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qgeom
