#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "hnkit/core.hpp"
#include "hnkit/detail/thread_pool.hpp"
#include "hnkit/errors.hpp"

namespace hnkit {

/// Tolerances and budget for one integration.  `seed` is kept for schema
/// compatibility; panel ordering is always deterministic, so results are
/// bit-reproducible for a fixed spec.
struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  std::int64_t max_panels = 0;  // 0: 10^6 for k <= 2, 10^7 for k >= 3
  std::uint64_t seed = 0;

  QuadratureSpec() = default;
  QuadratureSpec(double rel, double abs, std::int64_t panels = 0)
      : rel_tol(rel), abs_tol(abs), max_panels(panels) {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw DomainError("QuadratureSpec: tolerances must be positive");
  }
};

struct IntegralResult {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;
  std::int64_t panels_used = 0;
  bool converged = false;
};

namespace detail {

inline constexpr int kMaxQuadDim = 8;

inline std::int64_t resolve_max_panels(const QuadratureSpec& spec, int k) {
  if (spec.max_panels > 0) return spec.max_panels;
  return k <= 2 ? 1'000'000 : 10'000'000;
}

// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1]
// (QUADPACK dqk15 abscissae and weights).
struct GK15 {
  static constexpr int kNodes = 15;
  // symmetric nodes, ascending
  static constexpr double xgk[8] = {
      0.991455371120812639206854697526329,
      0.949107912342758524526189684047851,
      0.864864423359769072789712788640926,
      0.741531185599394439863864773280788,
      0.586087235467691130294144838258730,
      0.405845151377397166906606412076961,
      0.207784955007898467600689403773245,
      0.000000000000000000000000000000000};
  static constexpr double wgk[8] = {
      0.022935322010529224963732008058970,
      0.063092092629978553290700663189204,
      0.104790010322250183839876322541518,
      0.140653259715525918745189590510238,
      0.169004726639267902826583426598550,
      0.190350578064785409913256402421014,
      0.204432940075298892414161999234649,
      0.209482141084727828012999174891714};
  static constexpr double wg[4] = {
      0.129484966168869693270611432679082,
      0.279705391489276667901467771423780,
      0.381830050505118944950369775488975,
      0.417959183673469387755102040816327};

  static double node(int m) {  // m = 0..14, ascending
    return m < 7 ? -xgk[m] : (m == 7 ? 0.0 : xgk[14 - m]);
  }
  static double kronrod_weight(int m) { return m < 8 ? wgk[m] : wgk[14 - m]; }
  static double gauss_weight(int m) {  // 0 at Kronrod-only nodes
    if (m % 2 == 0) return 0.0;
    const int j = m < 7 ? (m - 1) / 2 : (13 - m) / 2;
    return wg[j];
  }
};

struct Panel {
  std::array<double, kMaxQuadDim> lo{};
  std::array<double, kMaxQuadDim> hi{};
  Complex value{0.0, 0.0};
  double err = 0.0;
  std::int64_t id = 0;
};

struct PanelWorse {
  bool operator()(const Panel& a, const Panel& b) const {
    if (a.err != b.err) return a.err < b.err;  // pop largest error first
    return a.id > b.id;                        // ties: oldest panel first
  }
};

// Neumaier compensated accumulator.
struct Compensated {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double get() const { return sum + comp; }
};

/// Evaluate the tensor GK15 rule on one s-space panel.  The integrand is
/// given in t-coordinates; the engine applies t = tan(s) with its Jacobian
/// prod(1 + t^2), so abscissae and Jacobians are computed once per
/// dimension, not once per tensor node.
template <class F>
inline Panel eval_panel(const F& f, int k, const std::array<double, kMaxQuadDim>& lo,
                        const std::array<double, kMaxQuadDim>& hi, std::int64_t id) {
  double tnode[kMaxQuadDim][GK15::kNodes];
  double jac[kMaxQuadDim][GK15::kNodes];
  double scale = 1.0;
  for (int d = 0; d < k; ++d) {
    const double half = 0.5 * (hi[d] - lo[d]);
    const double mid = 0.5 * (hi[d] + lo[d]);
    scale *= half;
    for (int m = 0; m < GK15::kNodes; ++m) {
      const double t = std::tan(mid + half * GK15::node(m));
      tnode[d][m] = t;
      jac[d][m] = 1.0 + t * t;
    }
  }

  Complex acc_k{0.0, 0.0};
  Complex acc_g{0.0, 0.0};
  int idx[kMaxQuadDim] = {0};
  double t[kMaxQuadDim];
  for (;;) {
    double wk = 1.0, wg = 1.0, j = 1.0;
    for (int d = 0; d < k; ++d) {
      const int m = idx[d];
      t[d] = tnode[d][m];
      wk *= GK15::kronrod_weight(m);
      wg *= GK15::gauss_weight(m);
      j *= jac[d][m];
    }
    const Complex fv = f(std::span<const double>(t, static_cast<size_t>(k))) * j;
    acc_k += wk * fv;
    if (wg != 0.0) acc_g += wg * fv;

    int d = 0;
    while (d < k && ++idx[d] == GK15::kNodes) idx[d++] = 0;
    if (d == k) break;
  }

  Panel p;
  p.lo = lo;
  p.hi = hi;
  p.value = acc_k * scale;
  p.err = std::abs(acc_k - acc_g) * scale;
  p.id = id;
  if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag()) ||
      !std::isfinite(p.err)) {
    p.value = Complex{0.0, 0.0};
    p.err = std::numeric_limits<double>::infinity();
  }
  return p;
}

/// Adaptive integration of f (in t-coordinates) over the s-space box
/// prod [lo_d, hi_d] subseteq (-pi/2, pi/2)^k under t = tan(s).
/// Deterministic: refinement always splits the 8 worst panels per round
/// (ties by age) and reduces in panel order; thread count never changes
/// the result.
template <class F>
inline IntegralResult adaptive_integrate(const F& f, int k,
                                         const std::array<double, kMaxQuadDim>& lo,
                                         const std::array<double, kMaxQuadDim>& hi,
                                         const QuadratureSpec& spec) {
  if (k < 1 || k > kMaxQuadDim)
    throw DomainError("adaptive_integrate: unsupported dimension");
  const std::int64_t max_panels = resolve_max_panels(spec, k);
  constexpr int kBatch = 8;

  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
  Compensated val_re, val_im, err_sum;
  std::int64_t panels_used = 0;
  std::int64_t next_id = 0;

  auto account = [&](const Panel& p, double sign) {
    val_re.add(sign * p.value.real());
    val_im.add(sign * p.value.imag());
    err_sum.add(sign * p.err);
  };

  // Initial grid: each dimension split once at its midpoint.
  {
    std::vector<Panel> initial;
    const int cells = 1 << k;
    for (int c = 0; c < cells; ++c) {
      std::array<double, kMaxQuadDim> clo = lo, chi = hi;
      for (int d = 0; d < k; ++d) {
        const double mid = 0.5 * (lo[d] + hi[d]);
        if ((c >> d) & 1) {
          clo[d] = mid;
        } else {
          chi[d] = mid;
        }
      }
      Panel p;
      p.lo = clo;
      p.hi = chi;
      p.id = next_id++;
      initial.push_back(p);
    }
    auto& pool = ThreadPool::global();
    const bool parallel = k >= 3 && pool.size() > 1;
    if (parallel) {
      pool.parallel_for(static_cast<int>(initial.size()), [&](int i) {
        auto& p = initial[static_cast<size_t>(i)];
        p = eval_panel(f, k, p.lo, p.hi, p.id);
      });
    } else {
      for (auto& p : initial) p = eval_panel(f, k, p.lo, p.hi, p.id);
    }
    for (auto& p : initial) {
      account(p, 1.0);
      ++panels_used;
      heap.push(p);
    }
  }

  auto tolerance = [&] {
    const double mag = std::hypot(val_re.get(), val_im.get());
    return std::max(spec.abs_tol, spec.rel_tol * mag);
  };

  // A divergent integrand can drive |value| so high that the rule-based
  // error satisfies the relative tolerance while the value itself is still
  // growing round over round; convergence therefore also requires the last
  // round's total correction to be inside the tolerance.
  double round_delta = 0.0;
  // Panels this narrow exhaust the resolution of the tan substitution; a
  // material panel stuck at this width means the integral cannot be
  // certified (typically a violated decay assumption).
  constexpr double kMinPanelWidth = 1e-14;
  bool resolution_exhausted = false;

  while ((std::max(err_sum.get(), 0.0) > tolerance() ||
          round_delta > tolerance()) &&
         !heap.empty()) {
    if (panels_used + 2 > max_panels) break;

    std::vector<Panel> parents;
    while (static_cast<int>(parents.size()) < kBatch && !heap.empty() &&
           heap.top().err > 0.0 &&
           panels_used + 2 * static_cast<std::int64_t>(parents.size() + 1) <=
               max_panels) {
      const Panel& top = heap.top();
      double widest = 0.0;
      for (int d = 0; d < k; ++d)
        widest = std::max(widest, top.hi[d] - top.lo[d]);
      if (widest < 2.0 * kMinPanelWidth) {
        // Stays accounted in the running sums but is not refinable.
        resolution_exhausted = true;
        heap.pop();
        continue;
      }
      parents.push_back(top);
      heap.pop();
    }
    if (parents.empty()) break;

    std::vector<Panel> children(parents.size() * 2);
    for (size_t i = 0; i < parents.size(); ++i) {
      const Panel& par = parents[i];
      int split = 0;
      double widest = -1.0;
      for (int d = 0; d < k; ++d) {
        const double w = par.hi[d] - par.lo[d];
        if (w > widest) {
          widest = w;
          split = d;
        }
      }
      const double mid = 0.5 * (par.lo[split] + par.hi[split]);
      Panel& a = children[2 * i];
      Panel& b = children[2 * i + 1];
      a.lo = par.lo;
      a.hi = par.hi;
      a.hi[split] = mid;
      a.id = next_id++;
      b.lo = par.lo;
      b.hi = par.hi;
      b.lo[split] = mid;
      b.id = next_id++;
    }

    auto& pool = ThreadPool::global();
    const bool parallel = k >= 3 && pool.size() > 1 && children.size() > 1;
    if (parallel) {
      pool.parallel_for(static_cast<int>(children.size()), [&](int i) {
        auto& c = children[static_cast<size_t>(i)];
        c = eval_panel(f, k, c.lo, c.hi, c.id);
      });
    } else {
      for (auto& c : children) c = eval_panel(f, k, c.lo, c.hi, c.id);
    }

    for (const Panel& par : parents) account(par, -1.0);
    round_delta = 0.0;
    for (size_t i = 0; i < parents.size(); ++i) {
      round_delta += std::abs(children[2 * i].value + children[2 * i + 1].value -
                              parents[i].value);
    }
    for (const Panel& c : children) {
      account(c, 1.0);
      ++panels_used;
      heap.push(c);
    }
  }

  IntegralResult out;
  out.value = Complex{val_re.get(), val_im.get()};
  out.error_estimate = std::max(err_sum.get(), 0.0);
  out.panels_used = panels_used;
  out.converged = out.error_estimate <= tolerance() &&
                  round_delta <= tolerance() && !resolution_exhausted;
  return out;
}

inline std::array<double, kMaxQuadDim> full_sbox_lo(int k) {
  std::array<double, kMaxQuadDim> lo{};
  for (int d = 0; d < k; ++d) lo[d] = -kPi / 2.0;
  return lo;
}

inline std::array<double, kMaxQuadDim> full_sbox_hi(int k) {
  std::array<double, kMaxQuadDim> hi{};
  for (int d = 0; d < k; ++d) hi[d] = kPi / 2.0;
  return hi;
}

/// Integral of f over all of R^k.
template <class F>
inline IntegralResult integrate_over_Rk(const F& f, int k,
                                        const QuadratureSpec& spec) {
  return adaptive_integrate(f, k, full_sbox_lo(k), full_sbox_hi(k), spec);
}

/// Integral of f over the finite box prod [tlo_d, thi_d].
template <class F>
inline IntegralResult integrate_over_box(const F& f, int k,
                                         std::span<const double> tlo,
                                         std::span<const double> thi,
                                         const QuadratureSpec& spec) {
  std::array<double, kMaxQuadDim> lo{}, hi{};
  for (int d = 0; d < k; ++d) {
    lo[d] = std::atan(tlo[static_cast<size_t>(d)]);
    hi[d] = std::atan(thi[static_cast<size_t>(d)]);
    if (!(lo[d] < hi[d])) throw DomainError("integrate_over_box: empty box");
  }
  return adaptive_integrate(f, k, lo, hi, spec);
}

}  // namespace detail
}  // namespace hnkit
