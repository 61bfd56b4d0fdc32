#pragma once

// Test-only oracles, independent of the library's evaluation paths.

#include <cmath>
#include <complex>
#include <vector>

#include "hnkit/core.hpp"
#include "hnkit/detail/rng.hpp"

namespace hnkit_test {

using hnkit::Complex;
using hnkit::kImagUnit;
using hnkit::kPi;

/// Classical one-variable integrand, written directly:
/// 1/(t - z) - t/(1 + t^2).
inline Complex classic_integrand_1d(Complex z, double t) {
  return 1.0 / (t - z) - t / (1.0 + t * t);
}

/// Two-variable kernel via a hand-expanded partial-fraction form, kept
/// deliberately different from the library's factored evaluation:
///   K_2 = i( -1/2 * A1*A2 + 1/4 * B1*B2 ) with the products multiplied out.
inline Complex expanded_K2(Complex z1, Complex z2, double t1, double t2) {
  const Complex i = kImagUnit;
  const Complex a = 1.0 / ((t1 - z1) * (t2 - z2)) -
                    1.0 / ((t1 - z1) * (t2 + i)) -
                    1.0 / ((t1 + i) * (t2 - z2)) +
                    1.0 / ((t1 + i) * (t2 + i));
  const Complex b = 1.0 / ((t1 - i) * (t2 - i)) -
                    1.0 / ((t1 - i) * (t2 + i)) -
                    1.0 / ((t1 + i) * (t2 - i)) +
                    1.0 / ((t1 + i) * (t2 + i));
  return i * (-0.5 * a + 0.25 * b);
}

/// Brute-force admissible sign-pattern filter (base-3 counter, no reuse of
/// the library's enumeration).
inline std::vector<std::vector<int>> brute_force_admissible(int n) {
  std::vector<std::vector<int>> out;
  long total = 1;
  for (int k = 0; k < n; ++k) total *= 3;
  for (long code = 0; code < total; ++code) {
    long c = code;
    std::vector<int> v(static_cast<size_t>(n));
    for (int k = n - 1; k >= 0; --k) {
      v[static_cast<size_t>(k)] = static_cast<int>(c % 3) - 1;
      c /= 3;
    }
    bool plus = false, minus = false;
    for (int e : v) {
      plus |= e == 1;
      minus |= e == -1;
    }
    if (plus && minus) out.push_back(std::move(v));
  }
  return out;
}

inline hnkit::UpperPoint random_upper(int n, hnkit::detail::Rng& rng) {
  std::vector<Complex> c;
  c.reserve(static_cast<size_t>(n));
  for (int l = 0; l < n; ++l) c.push_back(rng.upper_coord());
  return hnkit::UpperPoint(std::move(c));
}

/// Random off-real point with the requested half-plane signs (+1 up, -1 down).
inline hnkit::OffRealPoint random_off_real(const std::vector<int>& signs,
                                           hnkit::detail::Rng& rng) {
  std::vector<Complex> c;
  c.reserve(signs.size());
  for (int s : signs) c.push_back(rng.half_plane_coord(s));
  return hnkit::OffRealPoint(std::move(c));
}

inline std::vector<double> random_reals(int n, hnkit::detail::Rng& rng,
                                        double lo = -5.0, double hi = 5.0) {
  std::vector<double> t(static_cast<size_t>(n));
  for (double& v : t) v = rng.uniform(lo, hi);
  return t;
}

// Frozen one-dimensional contour-integral values used across the suites.
// J(m) = integral over R of ((t-i)/(t+i))^m / (1+t^2)^2 dt:
//   J(+-1) = -pi/4, J(m) = 0 for |m| >= 2, J(0) = pi/2.
inline double residue_J(int m) {
  if (m == 0) return kPi / 2.0;
  if (m == 1 || m == -1) return -kPi / 4.0;
  return 0.0;
}

}  // namespace hnkit_test
