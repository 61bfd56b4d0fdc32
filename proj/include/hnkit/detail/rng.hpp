#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace hnkit::detail {

// Deterministic uniform generator.  std::mt19937_64's raw output is fully
// specified by the standard; the mapping to doubles below avoids
// std::uniform_real_distribution, whose results vary between standard
// libraries, so streams are bit-identical across platforms for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// One coordinate of an upper half-plane sample: Re in [-3,3], Im in [0.5,4].
  std::complex<double> upper_coord() {
    const double re = uniform(-3.0, 3.0);
    const double im = uniform(0.5, 4.0);
    return {re, im};
  }

  /// Coordinate with the requested half-plane (sign = +1 upper, -1 lower).
  std::complex<double> half_plane_coord(int sign) {
    const double re = uniform(-3.0, 3.0);
    const double im = uniform(0.5, 4.0);
    return {re, sign >= 0 ? im : -im};
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace hnkit::detail
