#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "hnkit/core.hpp"
#include "hnkit/errors.hpp"

namespace hnkit {

/// Argument pair (z, t) of the representation kernel: z off-real, t real,
/// matching dimensions.
struct KernelPoint {
  OffRealPoint z;
  std::vector<double> t;

  KernelPoint(OffRealPoint z_, std::vector<double> t_)
      : z(std::move(z_)), t(std::move(t_)) {
    if (static_cast<int>(t.size()) != z.dim())
      throw DomainError("KernelPoint: dim(z) != dim(t)");
    for (double v : t) {
      if (!std::isfinite(v)) throw DomainError("KernelPoint: non-finite t");
    }
  }

  int dim() const { return z.dim(); }
};

/// Point of the unit polydisk: every coordinate of modulus < 1.
struct DiskPoint {
  std::vector<Complex> coords;

  explicit DiskPoint(std::vector<Complex> c) : coords(std::move(c)) {
    for (const Complex& w : coords) {
      if (!(std::abs(w) < 1.0)) throw DomainError("DiskPoint: |w| >= 1");
    }
  }

  int dim() const { return static_cast<int>(coords.size()); }
};

namespace detail {

/// (2i)^n for small n >= 0.
inline Complex two_i_pow(int n) {
  Complex p{1.0, 0.0};
  for (int k = 0; k < n; ++k) p *= Complex{0.0, 2.0};
  return p;
}

/// Kernel evaluated directly from raw spans; callers guarantee Im z != 0.
/// Kept in the factored form: each factor is O(1/(1+t^2)), which avoids
/// cancellation for large |t|.
inline Complex eval_K_raw(std::span<const Complex> z, std::span<const double> t) {
  const int n = static_cast<int>(z.size());
  Complex prod_z{1.0, 0.0};
  Complex prod_i{1.0, 0.0};
  for (int l = 0; l < n; ++l) {
    const double tl = t[static_cast<size_t>(l)];
    const Complex zl = z[static_cast<size_t>(l)];
    const Complex tpi{tl, 1.0};   // t + i
    const Complex tmi{tl, -1.0};  // t - i
    prod_z *= 1.0 / (tl - zl) - 1.0 / tpi;
    prod_i *= 1.0 / tmi - 1.0 / tpi;
  }
  const Complex scale = 1.0 / two_i_pow(n);
  return kImagUnit * (2.0 * scale * prod_z - scale * prod_i);
}

inline double eval_poisson_raw(std::span<const Complex> z,
                               std::span<const double> t) {
  double p = 1.0;
  for (size_t l = 0; l < z.size(); ++l) {
    const Complex d = t[l] - z[l];
    p *= z[l].imag() / std::norm(d);
  }
  return p;
}

}  // namespace detail

/// The kernel of the n-variable integral representation,
///   K_n(z,t) = i ( 2/(2i)^n prod(1/(t_l - z_l) - 1/(t_l + i))
///                 - 1/(2i)^n prod(1/(t_l - i) - 1/(t_l + i)) ).
/// For n = 1 it reduces to the classical integrand 1/(t-z) - t/(1+t^2).
/// The empty product gives K_0 = i.
inline Complex eval_K(const KernelPoint& p) {
  return detail::eval_K_raw(p.z.coords(), p.t);
}

/// Poisson kernel of the poly-upper half-plane,
///   P_n(z,t) = prod Im(z_l)/|t_l - z_l|^2,  strictly positive.
inline double eval_poisson(const KernelPoint& p) {
  if (!p.z.in_upper())
    throw DomainError("eval_poisson: requires Im z_l > 0 for all l");
  return detail::eval_poisson_raw(p.z.coords(), p.t);
}

/// The three rational building blocks whose products decompose
/// Im[K_n] - P_n:
///   rho = -1:  1/(t-z) - 1/(t-i)
///   rho =  0:  1/(t-i) - 1/(t+i)
///   rho = +1:  1/(t+i) - 1/(t-conj(z))
inline Complex eval_N(int rho_entry, Complex z, double t) {
  const Complex tpi{t, 1.0};
  const Complex tmi{t, -1.0};
  switch (rho_entry) {
    case -1:
      if (z.imag() == 0.0)
        throw DomainError("eval_N: rho = -1 requires Im z != 0");
      return 1.0 / (t - z) - 1.0 / tmi;
    case 0:
      return 1.0 / tmi - 1.0 / tpi;
    case 1:
      if (z.imag() == 0.0)
        throw DomainError("eval_N: rho = +1 requires Im z != 0");
      return 1.0 / tpi - 1.0 / (t - std::conj(z));
    default:
      throw DomainError("eval_N: rho entry not in {-1,0,1}");
  }
}

/// Product over j of N_{rho_j, j}(z_j, t_j).
inline Complex eval_rho_product(const RhoVector& rho, const KernelPoint& p) {
  if (rho.dim() != p.dim())
    throw DomainError("eval_rho_product: dimension mismatch");
  Complex prod{1.0, 0.0};
  for (int j = 1; j <= p.dim(); ++j) {
    prod *= eval_N(rho.entry(j), p.z.coord(j),
                   p.t[static_cast<size_t>(j - 1)]);
  }
  return prod;
}

/// Absolute residual of the decomposition
///   Im[K_n] = P_n - (1/(2i)^n) sum_{admissible rho} prod_j N_{rho_j, j},
/// valid for z in the poly-upper half-plane.  The sum is empty for n = 1.
inline double im_K_decomposition_residual(const KernelPoint& p) {
  if (!p.z.in_upper())
    throw DomainError("im_K_decomposition_residual: requires z in C^{+n}");
  const int n = p.dim();
  Complex sum{0.0, 0.0};
  for (const RhoVector& rho : enumerate_admissible_rho(n)) {
    sum += eval_rho_product(rho, p);
  }
  const Complex residual = Complex{std::imag(eval_K(p)) - eval_poisson(p), 0.0} +
                           sum / detail::two_i_pow(n);
  return std::abs(residual);
}

/// Helper of the cross-component symmetry formulas:
///   f(z,t) = (z+i)(t-i) / (2i(t-z)),
/// with f(i,t) = 1 and f(-i,t) = 0 for every real t, and
/// conj(f(z,t)) + f(conj(z),t) = 1.
inline Complex eval_f(Complex z, double t) {
  if (z.imag() == 0.0) throw DomainError("eval_f: z must be off the real axis");
  const Complex tmi{t, -1.0};
  return (z + kImagUnit) * tmi / (Complex{0.0, 2.0} * (t - z));
}

/// Biholomorphism of the upper half-plane onto the unit disk,
/// z -> (z-i)/(z+i); maps R bijectively onto S^1 \ {1}.
inline Complex cayley(Complex z) {
  if (z == -kImagUnit) throw DomainError("cayley: undefined at z = -i");
  return (z - kImagUnit) / (z + kImagUnit);
}

/// Inverse of cayley: w -> i(1+w)/(1-w), undefined at w = 1 (the image of
/// the boundary point at infinity).
inline Complex inverse_cayley(Complex w) {
  if (w == Complex{1.0, 0.0})
    throw DomainError("inverse_cayley: undefined at w = 1");
  return kImagUnit * (1.0 + w) / (1.0 - w);
}

/// Boundary angle of the Cayley image of a real number:
/// (t-i)/(t+i) = exp(i s(t)) with s(t) = pi + 2 atan(t) in (0, 2pi).
inline double cayley_boundary_angle(double t) { return kPi + 2.0 * std::atan(t); }

}  // namespace hnkit
