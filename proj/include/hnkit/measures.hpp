#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hnkit/core.hpp"
#include "hnkit/errors.hpp"
#include "hnkit/quadrature.hpp"

namespace hnkit {

using DensityFn = std::function<double(std::span<const double>)>;
using Integrand = std::function<Complex(std::span<const double>)>;

/// Named densities usable from the JSON measure schema (arbitrary code
/// cannot be serialized, so serializable measures refer to this registry).
struct DensityInfo {
  std::function<DensityFn(int k)> make;
  double decay_c;  // density(t) <= decay_c * prod (1+t_l^2)^decay_p
  double decay_p;
};

inline const std::map<std::string, DensityInfo>& density_registry() {
  static const std::map<std::string, DensityInfo> registry = {
      {"one",
       DensityInfo{[](int) {
                     return DensityFn(
                         [](std::span<const double>) { return 1.0; });
                   },
                   1.0, 0.0}},
      {"inv_one_plus_t2_product",
       DensityInfo{[](int) {
                     return DensityFn([](std::span<const double> t) {
                       double p = 1.0;
                       for (double v : t) p /= 1.0 + v * v;
                       return p;
                     });
                   },
                   1.0, -1.0}},
  };
  return registry;
}

/// Positive Borel measure on R^k, described structurally: an absolutely
/// continuous part (density against Lebesgue), Lebesgue measure carried by
/// a hyperplane, a point mass, and nonnegative scalings and finite sums of
/// those.
class Measure {
 public:
  struct LebesgueDensity {
    int k;
    std::string density_name;  // registry name, or a free-form label
    DensityFn density;
    double decay_c;
    double decay_p;
  };
  /// scale x (n-1)-dimensional Lebesgue (surface) measure on
  /// {t : normal . t = offset}, parametrized by an orthonormal basis.
  struct HyperplaneLebesgue {
    int n;
    std::vector<double> normal;
    double offset;
    double scale;
  };
  struct PointMass {
    std::vector<double> location;
    double weight;
  };
  struct Scaled {
    double factor;
    std::shared_ptr<const Measure> inner;
  };
  struct Sum {
    std::vector<Measure> terms;
  };
  using Variant =
      std::variant<LebesgueDensity, HyperplaneLebesgue, PointMass, Scaled, Sum>;

  static Measure lebesgue(int k) { return from_registry(k, "one"); }

  static Measure from_registry(int k, const std::string& name) {
    const auto& reg = density_registry();
    const auto it = reg.find(name);
    if (it == reg.end())
      throw DomainError("Measure: unknown density \"" + name + "\"");
    if (k < 1) throw DomainError("Measure: dimension must be >= 1");
    return Measure(LebesgueDensity{k, name, it->second.make(k),
                                   it->second.decay_c, it->second.decay_p});
  }

  static Measure lebesgue_density(int k, std::string name, DensityFn density,
                                  double decay_c, double decay_p) {
    if (k < 1) throw DomainError("Measure: dimension must be >= 1");
    if (!(decay_c >= 0.0)) throw DomainError("Measure: decay constant < 0");
    return Measure(LebesgueDensity{k, std::move(name), std::move(density),
                                   decay_c, decay_p});
  }

  static Measure hyperplane(std::vector<double> normal, double offset,
                            double scale) {
    const int n = static_cast<int>(normal.size());
    if (n < 2) throw DomainError("Measure: hyperplane needs ambient dim >= 2");
    double norm2 = 0.0;
    for (double v : normal) norm2 += v * v;
    if (!(norm2 > 0.0)) throw DomainError("Measure: hyperplane normal is zero");
    if (!(scale >= 0.0)) throw DomainError("Measure: hyperplane scale < 0");
    return Measure(HyperplaneLebesgue{n, std::move(normal), offset, scale});
  }

  static Measure point_mass(std::vector<double> location, double weight) {
    if (location.empty()) throw DomainError("Measure: empty atom location");
    if (!(weight >= 0.0)) throw DomainError("Measure: negative atom weight");
    return Measure(PointMass{std::move(location), weight});
  }

  static Measure scaled(double factor, Measure inner) {
    if (!(factor >= 0.0)) throw DomainError("Measure: negative scale factor");
    return Measure(
        Scaled{factor, std::make_shared<const Measure>(std::move(inner))});
  }

  static Measure sum(std::vector<Measure> terms) {
    if (terms.empty()) throw DomainError("Measure: empty sum");
    const int k = terms.front().dim();
    for (const Measure& m : terms) {
      if (m.dim() != k) throw DomainError("Measure: sum dimension mismatch");
    }
    return Measure(Sum{std::move(terms)});
  }

  static Measure zero(int k) { return scaled(0.0, lebesgue(k)); }

  int dim() const {
    return std::visit(
        [](const auto& v) -> int {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, LebesgueDensity>) return v.k;
          if constexpr (std::is_same_v<T, HyperplaneLebesgue>) return v.n;
          if constexpr (std::is_same_v<T, PointMass>)
            return static_cast<int>(v.location.size());
          if constexpr (std::is_same_v<T, Scaled>) return v.inner->dim();
          if constexpr (std::is_same_v<T, Sum>) return v.terms.front().dim();
        },
        v_);
  }

  const Variant& variant() const { return v_; }

  /// True when the structure contains an atom of (effectively) positive mass.
  bool has_atoms() const { return positive_atom_mass(1.0); }

 private:
  explicit Measure(Variant v) : v_(std::move(v)) {}

  bool positive_atom_mass(double factor) const {
    if (factor == 0.0) return false;
    if (const auto* pm = std::get_if<PointMass>(&v_))
      return factor * pm->weight > 0.0;
    if (const auto* sc = std::get_if<Scaled>(&v_))
      return sc->inner->positive_atom_mass(factor * sc->factor);
    if (const auto* s = std::get_if<Sum>(&v_)) {
      for (const Measure& m : s->terms) {
        if (m.positive_atom_mass(factor)) return true;
      }
    }
    return false;
  }

  Variant v_;
};

namespace detail {

/// Deterministic orthonormal basis of {t : normal . t = 0}: Gram-Schmidt of
/// the standard basis against the unit normal, keeping the first n-1
/// directions that survive.
inline std::vector<std::vector<double>> hyperplane_basis(
    const std::vector<double>& normal) {
  const int n = static_cast<int>(normal.size());
  double norm = 0.0;
  for (double v : normal) norm += v * v;
  norm = std::sqrt(norm);
  std::vector<std::vector<double>> basis;
  std::vector<double> unit(normal);
  for (double& v : unit) v /= norm;
  basis.push_back(unit);  // slot 0: the normal; stripped before returning
  for (int e = 0; e < n && static_cast<int>(basis.size()) < n; ++e) {
    std::vector<double> cand(static_cast<size_t>(n), 0.0);
    cand[static_cast<size_t>(e)] = 1.0;
    for (const auto& b : basis) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i)
        dot += cand[static_cast<size_t>(i)] * b[static_cast<size_t>(i)];
      for (int i = 0; i < n; ++i)
        cand[static_cast<size_t>(i)] -= dot * b[static_cast<size_t>(i)];
    }
    double len = 0.0;
    for (double v : cand) len += v * v;
    len = std::sqrt(len);
    if (len > 1e-10) {
      for (double& v : cand) v /= len;
      basis.push_back(std::move(cand));
    }
  }
  basis.erase(basis.begin());
  return basis;
}

inline std::vector<double> hyperplane_base_point(
    const Measure::HyperplaneLebesgue& h) {
  double norm2 = 0.0;
  for (double v : h.normal) norm2 += v * v;
  std::vector<double> p0(h.normal);
  for (double& v : p0) v *= h.offset / norm2;
  return p0;
}

}  // namespace detail

/// Integral of a (complex-valued) integrand against the measure.  Point
/// masses are evaluated exactly; scalings and sums distribute; hyperplanes
/// integrate the orthonormally pulled-back integrand over R^{n-1}.  For the
/// continuous parts the integrand times the density must decay at least
/// like prod (1+t_l^2)^{-1} (caller-asserted).
inline IntegralResult integrate(const Measure& mu, const Integrand& f,
                                const QuadratureSpec& spec = {}) {
  using LD = Measure::LebesgueDensity;
  using HL = Measure::HyperplaneLebesgue;
  using PM = Measure::PointMass;
  using SC = Measure::Scaled;
  using SM = Measure::Sum;

  if (const auto* ld = std::get_if<LD>(&mu.variant())) {
    const auto g = [&](std::span<const double> t) {
      return f(t) * ld->density(t);
    };
    return detail::integrate_over_Rk(g, ld->k, spec);
  }
  if (const auto* hl = std::get_if<HL>(&mu.variant())) {
    const auto basis = detail::hyperplane_basis(hl->normal);
    const auto p0 = detail::hyperplane_base_point(*hl);
    const int k = hl->n - 1;
    const auto g = [&](std::span<const double> u) {
      double t[detail::kMaxQuadDim];
      for (int i = 0; i < hl->n; ++i) {
        double v = p0[static_cast<size_t>(i)];
        for (int d = 0; d < k; ++d)
          v += u[static_cast<size_t>(d)] *
               basis[static_cast<size_t>(d)][static_cast<size_t>(i)];
        t[i] = v;
      }
      return f(std::span<const double>(t, static_cast<size_t>(hl->n))) *
             hl->scale;
    };
    return detail::integrate_over_Rk(g, k, spec);
  }
  if (const auto* pm = std::get_if<PM>(&mu.variant())) {
    IntegralResult r;
    r.value = pm->weight * f(pm->location);
    r.converged = true;
    return r;
  }
  if (const auto* sc = std::get_if<SC>(&mu.variant())) {
    if (sc->factor == 0.0) {
      IntegralResult r;
      r.converged = true;
      return r;
    }
    IntegralResult r = integrate(*sc->inner, f, spec);
    r.value *= sc->factor;
    r.error_estimate *= sc->factor;
    return r;
  }
  const auto& sum = std::get<SM>(mu.variant());
  IntegralResult total;
  total.converged = true;
  for (const Measure& term : sum.terms) {
    const IntegralResult r = integrate(term, f, spec);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.panels_used += r.panels_used;
    total.converged = total.converged && r.converged;
  }
  return total;
}

/// The growth integral  int prod 1/(1+t_l^2) dmu.  A finite, converged
/// value certifies the growth condition at quadrature accuracy; failure to
/// converge signals a (numerically) violated growth condition.
inline IntegralResult growth_norm(const Measure& mu,
                                  const QuadratureSpec& spec = {}) {
  const int k = mu.dim();
  const auto f = [k](std::span<const double> t) {
    double p = 1.0;
    for (int d = 0; d < k; ++d) p /= 1.0 + t[static_cast<size_t>(d)] *
                                          t[static_cast<size_t>(d)];
    return Complex{p, 0.0};
  };
  return integrate(mu, f, spec);
}

/// The image of the measure on the n-torus under the boundary Cayley map:
///   int f dnu = int f(s(t)) prod 2/(1+t_l^2) dmu(t),
/// with s_l(t) = pi + 2 atan(t_l) in (0, 2pi).  nu is finite whenever the
/// growth condition holds; its total mass is 2^k times the growth integral.
class TorusMeasure {
 public:
  explicit TorusMeasure(Measure mu) : mu_(std::move(mu)) {}

  int dim() const { return mu_.dim(); }
  const Measure& base() const { return mu_; }

  IntegralResult integrate(const Integrand& f_angles,
                           const QuadratureSpec& spec = {}) const {
    const int k = mu_.dim();
    const auto g = [&](std::span<const double> t) {
      double s[detail::kMaxQuadDim];
      double w = 1.0;
      for (int d = 0; d < k; ++d) {
        const double td = t[static_cast<size_t>(d)];
        s[d] = kPi + 2.0 * std::atan(td);
        w *= 2.0 / (1.0 + td * td);
      }
      return f_angles(std::span<const double>(s, static_cast<size_t>(k))) * w;
    };
    return hnkit::integrate(mu_, g, spec);
  }

  IntegralResult total_mass(const QuadratureSpec& spec = {}) const {
    return integrate([](std::span<const double>) { return Complex{1.0, 0.0}; },
                     spec);
  }

 private:
  Measure mu_;
};

inline TorusMeasure transform_to_torus(Measure mu) {
  return TorusMeasure(std::move(mu));
}

/// Mass of the centered box of half-width L (for the hyperplane variant:
/// of the parameter-space box, an equivalent exhaustion of the support).
/// Used to probe whether the total mass is finite.
inline IntegralResult box_mass(const Measure& mu, double L,
                               const QuadratureSpec& spec = {}) {
  using LD = Measure::LebesgueDensity;
  using HL = Measure::HyperplaneLebesgue;
  using PM = Measure::PointMass;
  using SC = Measure::Scaled;
  using SM = Measure::Sum;

  if (const auto* ld = std::get_if<LD>(&mu.variant())) {
    std::vector<double> lo(static_cast<size_t>(ld->k), -L);
    std::vector<double> hi(static_cast<size_t>(ld->k), L);
    return detail::integrate_over_box(
        [&](std::span<const double> t) { return Complex{ld->density(t), 0.0}; },
        ld->k, lo, hi, spec);
  }
  if (const auto* hl = std::get_if<HL>(&mu.variant())) {
    IntegralResult r;
    r.value = hl->scale * std::pow(2.0 * L, hl->n - 1);
    r.converged = true;
    return r;
  }
  if (const auto* pm = std::get_if<PM>(&mu.variant())) {
    IntegralResult r;
    bool inside = true;
    for (double v : pm->location) inside = inside && std::abs(v) <= L;
    r.value = inside ? pm->weight : 0.0;
    r.converged = true;
    return r;
  }
  if (const auto* sc = std::get_if<SC>(&mu.variant())) {
    if (sc->factor == 0.0) {
      IntegralResult r;
      r.converged = true;
      return r;
    }
    IntegralResult r = box_mass(*sc->inner, L, spec);
    r.value *= sc->factor;
    r.error_estimate *= sc->factor;
    return r;
  }
  const auto& sum = std::get<SM>(mu.variant());
  IntegralResult total;
  total.converged = true;
  for (const Measure& term : sum.terms) {
    const IntegralResult r = box_mass(term, L, spec);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.panels_used += r.panels_used;
    total.converged = total.converged && r.converged;
  }
  return total;
}

}  // namespace hnkit
