#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hnkit/errors.hpp"

namespace hnkit {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kImagUnit{0.0, 1.0};

/// Absolute tolerance for deciding that a coordinate equals +i or -i when
/// classifying points of (C\R)^n.
inline constexpr double kClassifyEpsilon = 1e-12;

/// Noise floor granted to "non-negative imaginary part" when validating a
/// user-supplied function oracle (quadrature-backed oracles carry roughly
/// this much error).
inline constexpr double kHerglotzEpsilon = 1e-10;

namespace detail {
inline bool finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}
}  // namespace detail

/// Point of the poly-upper half-plane: every coordinate has Im > 0.
/// Coordinate access is 1-based throughout the library.
class UpperPoint {
 public:
  explicit UpperPoint(std::vector<Complex> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw DomainError("UpperPoint: dimension must be >= 1");
    for (const Complex& z : coords_) {
      if (!detail::finite(z)) throw DomainError("UpperPoint: non-finite coordinate");
      if (!(z.imag() > 0.0))
        throw DomainError("UpperPoint: coordinate with Im <= 0");
    }
  }

  int dim() const { return static_cast<int>(coords_.size()); }
  Complex coord(int ell) const { return coords_[static_cast<size_t>(ell - 1)]; }
  const std::vector<Complex>& coords() const { return coords_; }

  /// The point (i, i, ..., i) in n variables.
  static UpperPoint all_i(int n) {
    return UpperPoint(std::vector<Complex>(static_cast<size_t>(n), kImagUnit));
  }

 private:
  std::vector<Complex> coords_;
};

/// Point of (C\R)^n: every coordinate off the real axis.
class OffRealPoint {
 public:
  explicit OffRealPoint(std::vector<Complex> coords)
      : coords_(std::move(coords)) {
    if (coords_.empty()) throw DomainError("OffRealPoint: dimension must be >= 1");
    for (const Complex& z : coords_) {
      if (!detail::finite(z))
        throw DomainError("OffRealPoint: non-finite coordinate");
      if (z.imag() == 0.0)
        throw DomainError("OffRealPoint: coordinate on the real axis");
    }
  }

  OffRealPoint(const UpperPoint& p) : coords_(p.coords()) {}  // NOLINT: widening

  int dim() const { return static_cast<int>(coords_.size()); }
  Complex coord(int ell) const { return coords_[static_cast<size_t>(ell - 1)]; }
  const std::vector<Complex>& coords() const { return coords_; }

  bool in_upper() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](Complex z) { return z.imag() > 0.0; });
  }

  /// Expects all coordinates in the upper half-plane.
  UpperPoint to_upper() const { return UpperPoint(coords_); }

  OffRealPoint conjugated() const {
    std::vector<Complex> c(coords_);
    for (Complex& z : c) z = std::conj(z);
    return OffRealPoint(std::move(c));
  }

  /// Replace coordinate ell (1-based), keeping the rest.
  OffRealPoint with_coord(int ell, Complex value) const {
    std::vector<Complex> c(coords_);
    c[static_cast<size_t>(ell - 1)] = value;
    return OffRealPoint(std::move(c));
  }

 private:
  std::vector<Complex> coords_;
};

/// Subset of {1, ..., n}, kept sorted.  Indices are 1-based to match the
/// usual mathematical convention for coordinate labels.
class IndexSet {
 public:
  IndexSet(int n, std::vector<int> members) : n_(n), members_(std::move(members)) {
    if (n_ < 1) throw DomainError("IndexSet: dimension must be >= 1");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (int m : members_) {
      if (m < 1 || m > n_) throw DomainError("IndexSet: member out of range");
    }
  }

  static IndexSet empty(int n) { return IndexSet(n, {}); }

  static IndexSet full(int n) {
    std::vector<int> m(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)] = i + 1;
    return IndexSet(n, std::move(m));
  }

  /// The set {1,...,n} \ {ell}.
  static IndexSet complement_of(int n, int ell) {
    std::vector<int> m;
    m.reserve(static_cast<size_t>(n - 1));
    for (int i = 1; i <= n; ++i)
      if (i != ell) m.push_back(i);
    return IndexSet(n, std::move(m));
  }

  int n() const { return n_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool contains(int ell) const {
    return std::binary_search(members_.begin(), members_.end(), ell);
  }
  const std::vector<int>& members() const { return members_; }

  IndexSet complement() const {
    std::vector<int> m;
    m.reserve(static_cast<size_t>(n_) - members_.size());
    for (int i = 1; i <= n_; ++i)
      if (!contains(i)) m.push_back(i);
    return IndexSet(n_, std::move(m));
  }

  bool operator==(const IndexSet& other) const {
    return n_ == other.n_ && members_ == other.members_;
  }

 private:
  int n_;
  std::vector<int> members_;
};

/// Sign pattern in {-1,0,+1}^n.  "Admissible" means both a +1 and a -1
/// appear; only admissible patterns contribute to the mixed-sign sum that
/// distinguishes Im[K_n] from the Poisson kernel.
class RhoVector {
 public:
  explicit RhoVector(std::vector<int> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw DomainError("RhoVector: dimension must be >= 1");
    for (int e : entries_) {
      if (e < -1 || e > 1) throw DomainError("RhoVector: entry not in {-1,0,1}");
    }
  }

  int dim() const { return static_cast<int>(entries_.size()); }
  int entry(int j) const { return entries_[static_cast<size_t>(j - 1)]; }
  const std::vector<int>& entries() const { return entries_; }

  bool has_plus() const {
    return std::find(entries_.begin(), entries_.end(), 1) != entries_.end();
  }
  bool has_minus() const {
    return std::find(entries_.begin(), entries_.end(), -1) != entries_.end();
  }
  bool admissible() const { return has_plus() && has_minus(); }

  bool operator==(const RhoVector& other) const {
    return entries_ == other.entries_;
  }

 private:
  std::vector<int> entries_;
};

/// All rho in {-1,0,1}^n with at least one +1 and at least one -1, in
/// lexicographic order (-1 < 0 < 1).  There are 3^n - 2*2^n + 1 of them;
/// in particular none for n = 1.
inline std::vector<RhoVector> enumerate_admissible_rho(int n) {
  if (n < 1) throw DomainError("enumerate_admissible_rho: n must be >= 1");
  std::vector<RhoVector> out;
  std::vector<int> current(static_cast<size_t>(n), -1);
  for (;;) {
    bool plus = false, minus = false;
    for (int e : current) {
      plus |= (e == 1);
      minus |= (e == -1);
    }
    if (plus && minus) out.emplace_back(current);
    // lexicographic increment over {-1,0,1}^n
    int pos = n - 1;
    while (pos >= 0 && current[static_cast<size_t>(pos)] == 1) {
      current[static_cast<size_t>(pos)] = -1;
      --pos;
    }
    if (pos < 0) break;
    ++current[static_cast<size_t>(pos)];
  }
  return out;
}

/// Partition of the coordinates of an off-real point by half-plane
/// membership and equality (within epsilon) with +i / -i.
struct SymmetryClassification {
  IndexSet c_plus;
  IndexSet i_plus;
  IndexSet i_minus;
  IndexSet c_minus;
  double epsilon;  // tolerance used for the "equals +-i" test
};

inline SymmetryClassification classify(const OffRealPoint& z,
                                       double epsilon = kClassifyEpsilon) {
  const int n = z.dim();
  std::vector<int> cp, ip, im, cm;
  for (int ell = 1; ell <= n; ++ell) {
    const Complex c = z.coord(ell);
    if (std::abs(c - kImagUnit) <= epsilon) {
      ip.push_back(ell);
    } else if (std::abs(c + kImagUnit) <= epsilon) {
      im.push_back(ell);
    } else if (c.imag() > 0.0) {
      cp.push_back(ell);
    } else {
      cm.push_back(ell);
    }
  }
  return SymmetryClassification{IndexSet(n, std::move(cp)),
                                IndexSet(n, std::move(ip)),
                                IndexSet(n, std::move(im)),
                                IndexSet(n, std::move(cm)), epsilon};
}

/// Ray along which a non-tangential limit is taken.  An empty anchor means
/// the limit |z| -> infinity; a finite anchor t0 means z -> t0.  Sample
/// points are z = anchor + scale * exp(i*angle) (or scale * exp(i*angle)
/// for the infinite anchor), which stay inside the Stoltz domain
/// {theta <= arg(z - t0) <= pi - theta} by construction.
class NonTangentialPath {
 public:
  NonTangentialPath(std::optional<double> anchor, double angle,
                    std::vector<double> ladder)
      : anchor_(anchor), angle_(angle), ladder_(std::move(ladder)) {
    if (!(angle_ > 0.0) || angle_ > kPi / 2.0)
      throw DomainError("NonTangentialPath: angle must lie in (0, pi/2]");
    if (ladder_.size() < 3)
      throw DomainError("NonTangentialPath: ladder needs at least 3 rungs");
    for (double s : ladder_) {
      if (!(s > 0.0) || !std::isfinite(s))
        throw DomainError("NonTangentialPath: ladder scales must be positive");
    }
    for (size_t i = 1; i < ladder_.size(); ++i) {
      const bool increasing = ladder_[i] > ladder_[i - 1];
      if (anchor_.has_value() && increasing)
        throw DomainError("NonTangentialPath: finite anchor needs a decreasing ladder");
      if (!anchor_.has_value() && !increasing)
        throw DomainError("NonTangentialPath: infinite anchor needs an increasing ladder");
    }
  }

  /// Default ladder towards infinity: |z| = 2^k, k = 3..12.
  static NonTangentialPath to_infinity(double angle = kPi / 2.0) {
    std::vector<double> ladder;
    for (int k = 3; k <= 12; ++k) ladder.push_back(std::ldexp(1.0, k));
    return NonTangentialPath(std::nullopt, angle, std::move(ladder));
  }

  /// Default ladder towards a real anchor: distance 2^-k, k = 3..12.
  static NonTangentialPath to_point(double t0, double angle = kPi / 2.0) {
    std::vector<double> ladder;
    for (int k = 3; k <= 12; ++k) ladder.push_back(std::ldexp(1.0, -k));
    return NonTangentialPath(t0, angle, std::move(ladder));
  }

  bool infinite() const { return !anchor_.has_value(); }
  std::optional<double> anchor() const { return anchor_; }
  double angle() const { return angle_; }
  const std::vector<double>& ladder() const { return ladder_; }

  Complex point_at(double scale) const {
    const Complex dir{std::cos(angle_), std::sin(angle_)};
    return anchor_.has_value() ? Complex(*anchor_, 0.0) + scale * dir
                               : scale * dir;
  }

 private:
  std::optional<double> anchor_;
  double angle_;
  std::vector<double> ladder_;
};

/// Positional scatter ("hexagonal bracket"): place the given values at the
/// positions named by their 1-based indices and fill every other slot.
inline std::vector<Complex> scatter(
    int n, std::span<const std::pair<int, Complex>> placed,
    Complex fill = kImagUnit) {
  std::vector<Complex> out(static_cast<size_t>(n), fill);
  for (const auto& [ell, value] : placed) {
    if (ell < 1 || ell > n) throw DomainError("scatter: index out of range");
    out[static_cast<size_t>(ell - 1)] = value;
  }
  return out;
}

/// The point with w at slot j and `fill` (default i) elsewhere.
inline std::vector<Complex> slot_fill(int n, int j, Complex w,
                                      Complex fill = kImagUnit) {
  const std::pair<int, Complex> one[] = {{j, w}};
  return scatter(n, one, fill);
}

}  // namespace hnkit
