#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "hnkit/core.hpp"
#include "hnkit/detail/extrapolation.hpp"
#include "hnkit/detail/rng.hpp"
#include "hnkit/errors.hpp"
#include "hnkit/kernels.hpp"
#include "hnkit/measures.hpp"

namespace hnkit {

/// The data triple (a, b, mu) determining a function through the integral
/// representation.  b is componentwise nonnegative; mu must satisfy the
/// growth condition for the representation integral to exist (certified by
/// growth_norm, not re-checked here).
struct RepresentationData {
  double a;
  std::vector<double> b;
  Measure mu;

  RepresentationData(double a_, std::vector<double> b_, Measure mu_)
      : a(a_), b(std::move(b_)), mu(std::move(mu_)) {
    if (static_cast<int>(b.size()) != mu.dim())
      throw DomainError("RepresentationData: dim(b) != dim(mu)");
    for (double v : b) {
      if (!(v >= 0.0)) throw DomainError("RepresentationData: b must be >= 0");
    }
    if (!std::isfinite(a)) throw DomainError("RepresentationData: a not finite");
  }

  int dim() const { return mu.dim(); }
};

/// Caller-supplied black box assumed holomorphic on the poly-upper
/// half-plane with (numerically) non-negative imaginary part; each
/// evaluation is validated against the declared noise floor.
class FunctionOracle {
 public:
  FunctionOracle(int n, std::function<Complex(const UpperPoint&)> eval,
                 double eps_hn = kHerglotzEpsilon)
      : n_(n), eval_(std::move(eval)), eps_hn_(eps_hn) {
    if (n_ < 1) throw DomainError("FunctionOracle: dimension must be >= 1");
  }

  int dim() const { return n_; }
  double herglotz_epsilon() const { return eps_hn_; }

  Complex operator()(const UpperPoint& z) const {
    if (z.dim() != n_) throw DomainError("FunctionOracle: dimension mismatch");
    const Complex v = eval_(z);
    if (v.imag() < -eps_hn_)
      throw DomainError("FunctionOracle: imaginary part below -eps_hn");
    return v;
  }

 private:
  int n_;
  std::function<Complex(const UpperPoint&)> eval_;
  double eps_hn_;
};

/// Extension of the representation formula to (C\R)^n: the kernel is
/// evaluated at the off-real point and the linear term uses z as given.
inline IntegralResult evaluate_q_extended(const RepresentationData& data,
                                          const OffRealPoint& z,
                                          const QuadratureSpec& spec = {}) {
  const int n = data.dim();
  if (z.dim() != n) throw DomainError("evaluate_q_extended: dimension mismatch");
  IntegralResult r = integrate(
      data.mu,
      [&](std::span<const double> t) { return detail::eval_K_raw(z.coords(), t); },
      spec);
  const double inv_pi_n = 1.0 / std::pow(kPi, n);
  r.value *= inv_pi_n;
  r.error_estimate *= inv_pi_n;
  Complex linear{data.a, 0.0};
  for (int ell = 1; ell <= n; ++ell)
    linear += data.b[static_cast<size_t>(ell - 1)] * z.coord(ell);
  r.value += linear;
  return r;
}

///   q(z) = a + sum b_l z_l + (1/pi^n) int K_n(z, t) dmu(t),  z in C^{+n}.
inline IntegralResult evaluate_q(const RepresentationData& data,
                                 const UpperPoint& z,
                                 const QuadratureSpec& spec = {}) {
  return evaluate_q_extended(data, OffRealPoint(z), spec);
}

/// Imaginary part through the Poisson kernel (valid when mu satisfies the
/// Nevanlinna condition):  Im q = sum b_l Im z_l + (1/pi^n) int P_n dmu.
inline IntegralResult evaluate_im_q(const RepresentationData& data,
                                    const UpperPoint& z,
                                    const QuadratureSpec& spec = {}) {
  const int n = data.dim();
  if (z.dim() != n) throw DomainError("evaluate_im_q: dimension mismatch");
  IntegralResult r = integrate(
      data.mu,
      [&](std::span<const double> t) {
        return Complex{detail::eval_poisson_raw(z.coords(), t), 0.0};
      },
      spec);
  const double inv_pi_n = 1.0 / std::pow(kPi, n);
  r.value *= inv_pi_n;
  r.error_estimate *= inv_pi_n;
  double linear = 0.0;
  for (int ell = 1; ell <= n; ++ell)
    linear += data.b[static_cast<size_t>(ell - 1)] * z.coord(ell).imag();
  r.value += linear;
  return r;
}

/// Oracle backed by the representation integral.
inline FunctionOracle make_oracle(RepresentationData data,
                                  QuadratureSpec spec = {},
                                  double eps_hn = kHerglotzEpsilon) {
  const int n = data.dim();
  return FunctionOracle(
      n,
      [data = std::move(data), spec](const UpperPoint& z) {
        return evaluate_q(data, z, spec).value;
      },
      eps_hn);
}

/// Result of a limit recovered along a ladder, with the extrapolation
/// diagnostics needed to judge it.
struct LimitEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  bool clamped = false;          // negative-by-noise estimate clamped to 0
  double imag_residual = 0.0;    // |Im| of the complex extrapolant
  std::vector<Complex> samples;  // f(ladder_k), for reports
};

namespace detail {

inline LimitEstimate limit_from_samples(std::span<const double> h,
                                        std::span<const Complex> f) {
  const ExtrapolationResult ex = extrapolate_to_zero(h, f);
  LimitEstimate out;
  out.value = ex.value.real();
  out.imag_residual = std::abs(ex.value.imag());
  out.error_estimate = ex.error_estimate;
  out.converged = ex.converged;
  out.samples.assign(f.begin(), f.end());
  return out;
}

}  // namespace detail

/// a = Re q(i, ..., i).
inline double recover_a(const FunctionOracle& q) {
  return q(UpperPoint::all_i(q.dim())).real();
}

/// b_j as the non-tangential limit of q(<i y at slot j, i elsewhere>)/(i y)
/// along the ladder, Richardson-extrapolated.  Estimates that are negative
/// within their own error bar clamp to 0 (the representation forces
/// b_j >= 0, so such negativity is numerical noise).
inline LimitEstimate recover_b(const FunctionOracle& q, int j,
                               const NonTangentialPath& path =
                                   NonTangentialPath::to_infinity()) {
  if (!path.infinite())
    throw DomainError("recover_b: path must have an infinite anchor");
  const int n = q.dim();
  if (j < 1 || j > n) throw DomainError("recover_b: index out of range");

  std::vector<double> h;
  std::vector<Complex> f;
  for (double y : path.ladder()) {
    const Complex w = path.point_at(y);
    f.push_back(q(UpperPoint(slot_fill(n, j, w))) / w);
    h.push_back(1.0 / y);  // the increasing y-ladder gives decreasing h
  }
  LimitEstimate est = detail::limit_from_samples(h, f);
  if (est.value < 0.0 && -est.value <= est.error_estimate) {
    est.value = 0.0;
    est.clamped = true;
  }
  return est;
}

/// c_j as the non-tangential limit of z_j q(<z_j at slot j, i elsewhere>)
/// for z_j -> 0; non-positive for Herglotz oracles.
inline LimitEstimate recover_c(const FunctionOracle& q, int j,
                               const NonTangentialPath& path =
                                   NonTangentialPath::to_point(0.0)) {
  if (path.infinite() || path.anchor().value() != 0.0)
    throw DomainError("recover_c: path must be anchored at 0");
  const int n = q.dim();
  if (j < 1 || j > n) throw DomainError("recover_c: index out of range");

  std::vector<double> h;
  std::vector<Complex> f;
  for (double y : path.ladder()) {
    const Complex w = path.point_at(y);
    f.push_back(w * q(UpperPoint(slot_fill(n, j, w))));
    h.push_back(y);
  }
  return detail::limit_from_samples(h, f);
}

/// n = 1 slope at infinity: lim q(z)/z = b.
inline LimitEstimate slope_at_infinity_1d(const FunctionOracle& q,
                                          const NonTangentialPath& path =
                                              NonTangentialPath::to_infinity()) {
  if (q.dim() != 1) throw DomainError("slope_at_infinity_1d: requires n = 1");
  return recover_b(q, 1, path);
}

/// n = 1 atom mass: mu({t0}) = pi * lim (t0 - z) q(z) as z -> t0.
inline LimitEstimate recover_point_mass_1d(const FunctionOracle& q, double t0,
                                           const NonTangentialPath& path) {
  if (q.dim() != 1) throw DomainError("recover_point_mass_1d: requires n = 1");
  if (path.infinite() || path.anchor().value() != t0)
    throw DomainError("recover_point_mass_1d: path must be anchored at t0");

  std::vector<double> h;
  std::vector<Complex> f;
  for (double y : path.ladder()) {
    const Complex z = path.point_at(y);
    f.push_back(kPi * (t0 - z) * q(UpperPoint(std::vector<Complex>{z})));
    h.push_back(y);
  }
  return detail::limit_from_samples(h, f);
}

inline LimitEstimate recover_point_mass_1d(const FunctionOracle& q, double t0) {
  return recover_point_mass_1d(q, t0, NonTangentialPath::to_point(t0));
}

/// C^1 test function with the decay certificate |psi| <= C prod (1+x^2)^-1.
struct TestFunction {
  std::function<double(std::span<const double>)> value;
  double decay_c = 1.0;
};

/// Stieltjes-type inversion:
///   int psi dmu = lim_{y -> 0+} int psi(x) Im q(x + i y) dx,
/// extrapolated along the given decreasing y-ladder.
inline LimitEstimate stieltjes_inverse(const FunctionOracle& q,
                                       const TestFunction& psi,
                                       std::span<const double> y_ladder,
                                       const QuadratureSpec& spec = {}) {
  if (y_ladder.size() < 3)
    throw DomainError("stieltjes_inverse: ladder needs at least 3 rungs");
  for (size_t i = 0; i < y_ladder.size(); ++i) {
    if (!(y_ladder[i] > 0.0) ||
        (i > 0 && !(y_ladder[i] < y_ladder[i - 1])))
      throw DomainError("stieltjes_inverse: ladder must be positive decreasing");
  }
  const int n = q.dim();
  std::vector<double> h;
  std::vector<Complex> f;
  bool all_converged = true;
  for (double y : y_ladder) {
    const auto integrand = [&](std::span<const double> x) {
      std::vector<Complex> coords(static_cast<size_t>(n));
      for (int d = 0; d < n; ++d)
        coords[static_cast<size_t>(d)] = Complex{x[static_cast<size_t>(d)], y};
      return Complex{psi.value(x) * q(UpperPoint(std::move(coords))).imag(), 0.0};
    };
    const IntegralResult r = detail::integrate_over_Rk(integrand, n, spec);
    all_converged = all_converged && r.converged;
    f.push_back(r.value);
    h.push_back(y);
  }
  LimitEstimate est = detail::limit_from_samples(h, f);
  est.converged = est.converged && all_converged;
  return est;
}

struct ConstancyVerdict {
  bool applicable = false;    // Im q(sample) <= eps_hn
  Complex constant_value{};   // q(sample) when applicable
  double max_deviation = 0.0; // over the random probe set
  int probes = 0;
};

/// If Im q vanishes at one point, a Herglotz function is constant; probe
/// that by sampling and reporting the maximal deviation from q(sample).
inline ConstancyVerdict constancy_check(const FunctionOracle& q,
                                        const UpperPoint& sample,
                                        int probes = 50,
                                        std::uint64_t seed = 0x5EED) {
  ConstancyVerdict v;
  const Complex base = q(sample);
  v.constant_value = base;
  if (base.imag() > q.herglotz_epsilon()) return v;  // not applicable
  v.applicable = true;
  v.probes = probes;
  detail::Rng rng(seed);
  const int n = q.dim();
  for (int rep = 0; rep < probes; ++rep) {
    std::vector<Complex> coords(static_cast<size_t>(n));
    for (auto& c : coords) c = rng.upper_coord();
    v.max_deviation =
        std::max(v.max_deviation, std::abs(q(UpperPoint(std::move(coords))) - base));
  }
  return v;
}

}  // namespace hnkit
