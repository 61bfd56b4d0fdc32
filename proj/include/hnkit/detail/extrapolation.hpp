#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "hnkit/core.hpp"
#include "hnkit/errors.hpp"

namespace hnkit::detail {

struct ExtrapolationResult {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;
  bool converged = false;
  int best_depth = 0;  // diagonal index chosen from the Neville tableau
};

/// Polynomial (Neville/Richardson) extrapolation of samples f(h_k) to
/// h -> 0.  h must be positive and strictly decreasing.  The returned error
/// is the smallest successive-diagonal difference; the matching diagonal
/// entry is the value.  No rate is assumed beyond smoothness in h, so noisy
/// tails simply stop improving the diagonal instead of corrupting it.
inline ExtrapolationResult extrapolate_to_zero(std::span<const double> h,
                                               std::span<const Complex> f,
                                               double abs_conv = 1e-5,
                                               double rel_conv = 1e-6) {
  const size_t n = h.size();
  if (n != f.size() || n < 3)
    throw DomainError("extrapolate_to_zero: need at least 3 samples");
  for (size_t i = 1; i < n; ++i) {
    if (!(h[i] > 0.0) || !(h[i] < h[i - 1]))
      throw DomainError("extrapolate_to_zero: h must be positive decreasing");
  }

  std::vector<std::vector<Complex>> t(n);
  t[0] = {f[0]};
  ExtrapolationResult best;
  best.value = f[0];
  best.error_estimate = std::abs(f[1] - f[0]);
  for (size_t i = 1; i < n; ++i) {
    t[i].resize(i + 1);
    t[i][0] = f[i];
    for (size_t m = 1; m <= i; ++m) {
      const double ratio = h[i - m] / h[i];
      t[i][m] = t[i][m - 1] +
                (t[i][m - 1] - t[i - 1][m - 1]) / (ratio - 1.0);
    }
    const double err = std::abs(t[i][i] - t[i - 1][i - 1]) +
                       std::abs(t[i][i] - t[i][i - 1]);
    if (i == 1 || err < best.error_estimate) {
      best.value = t[i][i];
      best.error_estimate = err;
      best.best_depth = static_cast<int>(i);
    }
  }
  best.converged = best.error_estimate <=
                   std::max(abs_conv, rel_conv * std::abs(best.value));
  return best;
}

}  // namespace hnkit::detail
