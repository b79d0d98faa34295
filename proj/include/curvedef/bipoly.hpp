#pragma once

#include <complex>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "curvedef/unipoly.hpp"

namespace curvedef {

/// Exact sparse bivariate polynomial in (z, w) over the Gaussian rationals.
/// Stored terms always have nonzero coefficients; degree fields track the
/// true maxima over stored terms.
class BiPoly {
 public:
  using Key = std::pair<int, int>;  // (z-power, w-power)

  BiPoly() = default;
  BiPoly(const GaussRat& c) { add_term(0, 0, c); }  // NOLINT(google-explicit-constructor)
  BiPoly(int c) : BiPoly(GaussRat(c)) {}            // NOLINT

  static BiPoly zero() { return BiPoly(); }
  static BiPoly term(int zp, int wp, const GaussRat& c) {
    BiPoly p;
    p.add_term(zp, wp, c);
    return p;
  }
  static BiPoly z() { return term(1, 0, GaussRat(1)); }
  static BiPoly w() { return term(0, 1, GaussRat(1)); }
  static BiPoly from_uni_z(const UniPoly& u) {
    BiPoly p;
    for (int k = 0; k <= u.degree(); ++k) p.add_term(k, 0, u.coeff(k));
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  int degree_z() const { return dz_; }
  int degree_w() const { return dw_; }
  const std::map<Key, GaussRat>& terms() const { return terms_; }

  GaussRat coeff(int zp, int wp) const {
    auto it = terms_.find({zp, wp});
    return it == terms_.end() ? GaussRat(0) : it->second;
  }

  void add_term(int zp, int wp, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace({zp, wp}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
    recompute_degrees();
  }

  BiPoly operator-() const {
    BiPoly p(*this);
    for (auto& [k, v] : p.terms_) v = -v;
    return p;
  }
  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly p(a);
    for (const auto& [k, v] : b.terms_) {
      auto [it, inserted] = p.terms_.try_emplace(k, v);
      if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) p.terms_.erase(it);
      }
    }
    p.recompute_degrees();
    return p;
  }
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly p;
    for (const auto& [ka, va] : a.terms_)
      for (const auto& [kb, vb] : b.terms_) {
        Key k{ka.first + kb.first, ka.second + kb.second};
        auto [it, inserted] = p.terms_.try_emplace(k, va * vb);
        if (!inserted) it->second += va * vb;
      }
    for (auto it = p.terms_.begin(); it != p.terms_.end();)
      it = it->second.is_zero() ? p.terms_.erase(it) : std::next(it);
    p.recompute_degrees();
    return p;
  }
  friend BiPoly operator*(const GaussRat& s, const BiPoly& b) {
    if (s.is_zero()) return BiPoly();
    BiPoly p(b);
    for (auto& [k, v] : p.terms_) v *= s;
    return p;
  }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

  BiPoly& operator+=(const BiPoly& o) { *this = *this + o; return *this; }
  BiPoly& operator-=(const BiPoly& o) { *this = *this - o; return *this; }
  BiPoly& operator*=(const BiPoly& o) { *this = *this * o; return *this; }

  BiPoly derivative_w() const {
    BiPoly p;
    for (const auto& [k, v] : terms_)
      if (k.second >= 1) p.terms_[{k.first, k.second - 1}] = GaussRat(k.second) * v;
    p.recompute_degrees();
    return p;
  }
  BiPoly derivative_z() const {
    BiPoly p;
    for (const auto& [k, v] : terms_)
      if (k.first >= 1) p.terms_[{k.first - 1, k.second}] = GaussRat(k.first) * v;
    p.recompute_degrees();
    return p;
  }

  /// Coefficients as a polynomial in w: entry j is the z-polynomial on w^j.
  std::vector<UniPoly> w_coeffs() const {
    std::vector<std::vector<GaussRat>> rows(static_cast<size_t>(dw_) + 1);
    for (auto& r : rows) r.resize(static_cast<size_t>(dz_) + 1);
    for (const auto& [k, v] : terms_) rows[static_cast<size_t>(k.second)][static_cast<size_t>(k.first)] = v;
    std::vector<UniPoly> out;
    out.reserve(rows.size());
    for (auto& r : rows) out.emplace_back(std::move(r));
    if (is_zero()) out.assign(1, UniPoly());
    return out;
  }
  static BiPoly from_w_coeffs(const std::vector<UniPoly>& cs) {
    BiPoly p;
    for (size_t j = 0; j < cs.size(); ++j)
      for (int k = 0; k <= cs[j].degree(); ++k) {
        const GaussRat c = cs[j].coeff(k);
        if (!c.is_zero()) p.terms_[{k, static_cast<int>(j)}] = c;
      }
    p.recompute_degrees();
    return p;
  }

  /// Substitute w -> s, z -> t for arbitrary BiPoly arguments (exact).
  BiPoly substitute(const BiPoly& t, const BiPoly& s) const {
    // Horner in w, then in z inside each coefficient.
    std::vector<UniPoly> cw = w_coeffs();
    BiPoly r;
    for (size_t j = cw.size(); j-- > 0;) {
      BiPoly cj;
      for (int k = cw[j].degree(); k >= 0; --k) {
        cj = cj * t;
        cj += BiPoly(cw[j].coeff(k));
      }
      r = r * s + cj;
    }
    return r;
  }

  /// P(z, w + g(z, w)) with exact expansion.
  BiPoly compose_shift(const BiPoly& g) const {
    return substitute(BiPoly::z(), BiPoly::w() + g);
  }

  /// Shear z -> z + lambda*w (changes the projection direction).
  BiPoly shear_z(const GaussRat& lambda) const {
    return substitute(BiPoly::z() + lambda * BiPoly::w(), BiPoly::w());
  }

  BiPoly swap_vars() const {
    BiPoly p;
    for (const auto& [k, v] : terms_) p.terms_[{k.second, k.first}] = v;
    p.recompute_degrees();
    return p;
  }

  GaussRat eval(const GaussRat& z, const GaussRat& w) const {
    GaussRat r(0);
    for (const auto& [k, v] : terms_) {
      GaussRat t = v;
      for (int a = 0; a < k.first; ++a) t *= z;
      for (int b = 0; b < k.second; ++b) t *= w;
      r += t;
    }
    return r;
  }
  std::complex<double> eval(const std::complex<double>& z, const std::complex<double>& w) const {
    std::complex<double> r{0, 0};
    for (const auto& [k, v] : terms_) {
      std::complex<double> t = v.to_complex();
      for (int a = 0; a < k.first; ++a) t *= z;
      for (int b = 0; b < k.second; ++b) t *= w;
      r += t;
    }
    return r;
  }

  /// Leading coefficient in w as z-polynomial.
  UniPoly lead_w() const {
    std::vector<GaussRat> v(static_cast<size_t>(dz_) + 1);
    for (const auto& [k, c] : terms_)
      if (k.second == dw_) v[static_cast<size_t>(k.first)] = c;
    return UniPoly(std::move(v));
  }

  bool is_monic_in_w() const {
    UniPoly l = lead_w();
    return l.degree() == 0 && l.coeff(0) == GaussRat(1);
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print in (w-degree, z-degree) descending order.
    std::map<std::pair<int, int>, GaussRat> ordered;
    for (const auto& [k, v] : terms_) ordered[{-k.second, -k.first}] = v;
    for (const auto& [nk, v] : ordered) {
      int wp = -nk.first, zp = -nk.second;
      if (!first) os << " + ";
      first = false;
      os << "(" << v.str() << ")";
      if (zp >= 1) os << "z" << (zp >= 2 ? "^" + std::to_string(zp) : "");
      if (wp >= 1) os << "w" << (wp >= 2 ? "^" + std::to_string(wp) : "");
    }
    return os.str();
  }

 private:
  void recompute_degrees() {
    dz_ = dw_ = 0;
    for (const auto& [k, v] : terms_) {
      dz_ = std::max(dz_, k.first);
      dw_ = std::max(dw_, k.second);
    }
  }
  std::map<Key, GaussRat> terms_;
  int dz_ = 0;
  int dw_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const BiPoly& p) { return os << p.str(); }

/// A polynomial monic in w: the canonical representative of a curve proper
/// over the z-disc. Construction checks the invariant.
class WeierstrassPoly {
 public:
  explicit WeierstrassPoly(BiPoly p) : p_(std::move(p)) {
    require(p_.is_monic_in_w(), ErrKind::InvalidInput, "not monic in w");
  }
  const BiPoly& base() const { return p_; }
  int degree() const { return p_.degree_w(); }

 private:
  BiPoly p_;
};

}  // namespace curvedef
