#pragma once

#include <algorithm>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "curvedef/rat.hpp"

namespace curvedef {

/// Exact dense univariate polynomial over the Gaussian rationals.
/// coeffs[k] is the coefficient of z^k; the zero polynomial has empty coeffs.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<GaussRat> c) : c_(std::move(c)) { trim(); }
  UniPoly(const GaussRat& constant) {  // NOLINT(google-explicit-constructor)
    if (!constant.is_zero()) c_ = {constant};
  }
  UniPoly(int constant) : UniPoly(GaussRat(constant)) {}  // NOLINT

  static UniPoly zero() { return UniPoly(); }
  static UniPoly one() { return UniPoly(GaussRat(1)); }
  /// c * z^k
  static UniPoly monomial(const GaussRat& c, int k) {
    if (c.is_zero()) return UniPoly();
    std::vector<GaussRat> v(static_cast<size_t>(k) + 1);
    v[static_cast<size_t>(k)] = c;
    return UniPoly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<GaussRat>& coeffs() const { return c_; }

  GaussRat coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return GaussRat(0);
    return c_[static_cast<size_t>(k)];
  }
  GaussRat lead() const { return is_zero() ? GaussRat(0) : c_.back(); }

  /// Vanishing order at z = 0; degree()+1 would be meaningless, so the zero
  /// polynomial reports -1.
  int ord0() const {
    if (is_zero()) return -1;
    for (size_t k = 0; k < c_.size(); ++k)
      if (!c_[k].is_zero()) return static_cast<int>(k);
    return -1;
  }

  UniPoly operator-() const {
    std::vector<GaussRat> v(c_);
    for (auto& x : v) x = -x;
    return UniPoly(std::move(v));
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<GaussRat> v(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return UniPoly(std::move(v));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<GaussRat> v(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(v));
  }
  friend UniPoly operator*(const GaussRat& s, const UniPoly& p) {
    if (s.is_zero()) return UniPoly();
    std::vector<GaussRat> v(p.c_);
    for (auto& x : v) x *= s;
    return UniPoly(std::move(v));
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  UniPoly& operator+=(const UniPoly& o) { *this = *this + o; return *this; }
  UniPoly& operator-=(const UniPoly& o) { *this = *this - o; return *this; }
  UniPoly& operator*=(const UniPoly& o) { *this = *this * o; return *this; }

  /// q, r with *this == q*d + r and deg r < deg d. Field coefficients, exact.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    require(!d.is_zero(), ErrKind::InvalidInput, "polynomial division by zero");
    UniPoly r = *this;
    if (r.degree() < d.degree()) return {UniPoly(), r};
    std::vector<GaussRat> q(static_cast<size_t>(r.degree() - d.degree()) + 1);
    GaussRat dl = d.lead();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      int k = r.degree() - d.degree();
      GaussRat f = r.lead() / dl;
      q[static_cast<size_t>(k)] = f;
      r -= UniPoly::monomial(f, k) * d;
    }
    return {UniPoly(std::move(q)), r};
  }
  UniPoly operator/(const UniPoly& d) const { return divmod(d).first; }
  UniPoly operator%(const UniPoly& d) const { return divmod(d).second; }

  /// Exact division; throws on nonzero remainder.
  UniPoly exact_div(const UniPoly& d) const {
    auto [q, r] = divmod(d);
    require(r.is_zero(), ErrKind::InternalInconsistency, "exact_div: nonzero remainder");
    return q;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<GaussRat> v(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) v[k - 1] = GaussRat(static_cast<int>(k)) * c_[k];
    return UniPoly(std::move(v));
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    return lead().inv() * *this;
  }

  /// *this * z^k
  UniPoly shifted_up(int k) const {
    if (is_zero()) return *this;
    std::vector<GaussRat> v(c_.size() + static_cast<size_t>(k));
    std::copy(c_.begin(), c_.end(), v.begin() + k);
    return UniPoly(std::move(v));
  }
  /// *this / z^k, assuming ord0 >= k.
  UniPoly shifted_down(int k) const {
    if (is_zero()) return *this;
    require(ord0() >= k, ErrKind::InternalInconsistency, "shifted_down below valuation");
    return UniPoly(std::vector<GaussRat>(c_.begin() + k, c_.end()));
  }

  GaussRat eval(const GaussRat& z) const {
    GaussRat r(0);
    for (size_t k = c_.size(); k-- > 0;) r = r * z + c_[k];
    return r;
  }
  std::complex<double> eval(const std::complex<double>& z) const {
    std::complex<double> r{0.0, 0.0};
    for (size_t k = c_.size(); k-- > 0;) r = r * z + c_[k].to_complex();
    return r;
  }

  std::vector<std::complex<double>> to_complex() const {
    std::vector<std::complex<double>> v(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) v[k] = c_[k].to_complex();
    return v;
  }

  std::string str(const std::string& var = "z") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      GaussRat c = coeff(k);
      if (c.is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c.str() << ")";
      if (k >= 1) os << var;
      if (k >= 2) os << "^" << k;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<GaussRat> c_;
};

inline std::ostream& operator<<(std::ostream& os, const UniPoly& p) { return os << p.str(); }

/// Monic gcd via the Euclidean algorithm; exact over the field.
inline UniPoly poly_gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Squarefree decomposition (Yun): returns f_1, f_2, ... with
/// p = c * prod f_k^k and each f_k squarefree, pairwise coprime.
inline std::vector<UniPoly> squarefree_decomposition(const UniPoly& p) {
  std::vector<UniPoly> out;
  if (p.degree() <= 0) return out;
  UniPoly a = p.monic();
  UniPoly g = poly_gcd(a, a.derivative());
  if (g.degree() == 0) {
    out.push_back(a);
    return out;
  }
  UniPoly w = a.exact_div(g);
  UniPoly y = a.derivative().exact_div(g);
  while (true) {
    UniPoly z = y - w.derivative();
    if (z.is_zero()) {
      out.push_back(w);
      break;
    }
    UniPoly f = poly_gcd(w, z);
    out.push_back(f);
    w = w.exact_div(f);
    y = z.exact_div(f);
  }
  return out;
}

}  // namespace curvedef
