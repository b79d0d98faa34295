#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

#include "curvedef/bipoly.hpp"

namespace curvedef {

using Cplx = std::complex<double>;

/// Floating-point univariate polynomial; coeffs[k] multiplies x^k.
using CPoly = std::vector<Cplx>;

inline int cdegree(const CPoly& p, double tol = 0.0) {
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
    if (std::abs(p[static_cast<size_t>(k)]) > tol) return k;
  return -1;
}

inline void ctrim(CPoly& p, double tol = 0.0) {
  p.resize(static_cast<size_t>(cdegree(p, tol) + 1));
}

inline Cplx ceval(const CPoly& p, Cplx x) {
  Cplx r{0, 0};
  for (size_t k = p.size(); k-- > 0;) r = r * x + p[k];
  return r;
}

inline CPoly cderiv(const CPoly& p) {
  if (p.size() <= 1) return {};
  CPoly d(p.size() - 1);
  for (size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
  return d;
}

inline CPoly cadd(const CPoly& a, const CPoly& b) {
  CPoly r(std::max(a.size(), b.size()), Cplx{0, 0});
  for (size_t k = 0; k < a.size(); ++k) r[k] += a[k];
  for (size_t k = 0; k < b.size(); ++k) r[k] += b[k];
  return r;
}

inline CPoly cmul(const CPoly& a, const CPoly& b) {
  if (a.empty() || b.empty()) return {};
  CPoly r(a.size() + b.size() - 1, Cplx{0, 0});
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline CPoly cscale(Cplx s, CPoly p) {
  for (auto& c : p) c *= s;
  return p;
}

inline double cnorm1(const CPoly& p) {
  double s = 0;
  for (auto& c : p) s += std::abs(c);
  return s;
}

/// Floating-point bivariate polynomial stored w-major: wc[j] is the
/// z-polynomial multiplying w^j.
struct CBiPoly {
  std::vector<CPoly> wc;

  CBiPoly() = default;
  explicit CBiPoly(std::vector<CPoly> c) : wc(std::move(c)) { trim(); }

  static CBiPoly from_exact(const BiPoly& p) {
    auto cs = p.w_coeffs();
    std::vector<CPoly> wc(cs.size());
    for (size_t j = 0; j < cs.size(); ++j) wc[j] = cs[j].to_complex();
    return CBiPoly(std::move(wc));
  }

  int degree_w() const { return static_cast<int>(wc.size()) - 1; }
  int degree_z() const {
    int d = 0;
    for (const auto& c : wc) d = std::max(d, cdegree(c));
    return d;
  }

  bool empty() const { return wc.empty(); }

  void trim(double tol = 0.0) {
    for (auto& c : wc) ctrim(c, tol);
    while (!wc.empty() && wc.back().empty()) wc.pop_back();
  }

  Cplx eval(Cplx z, Cplx w) const {
    Cplx r{0, 0};
    for (size_t j = wc.size(); j-- > 0;) r = r * w + ceval(wc[j], z);
    return r;
  }

  /// Fiber polynomial in w over a fixed z (coefficients ascending in w).
  CPoly fiber(Cplx z) const {
    CPoly f(wc.size());
    for (size_t j = 0; j < wc.size(); ++j) f[j] = ceval(wc[j], z);
    return f;
  }

  CBiPoly deriv_w() const {
    if (wc.size() <= 1) return CBiPoly();
    std::vector<CPoly> d(wc.size() - 1);
    for (size_t j = 1; j < wc.size(); ++j) d[j - 1] = cscale(static_cast<double>(j), wc[j]);
    return CBiPoly(std::move(d));
  }
  CBiPoly deriv_z() const {
    std::vector<CPoly> d(wc.size());
    for (size_t j = 0; j < wc.size(); ++j) d[j] = cderiv(wc[j]);
    return CBiPoly(std::move(d));
  }

  friend CBiPoly operator+(const CBiPoly& a, const CBiPoly& b) {
    std::vector<CPoly> r(std::max(a.wc.size(), b.wc.size()));
    for (size_t j = 0; j < r.size(); ++j) {
      CPoly pa = j < a.wc.size() ? a.wc[j] : CPoly{};
      CPoly pb = j < b.wc.size() ? b.wc[j] : CPoly{};
      r[j] = cadd(pa, pb);
    }
    return CBiPoly(std::move(r));
  }
  friend CBiPoly operator*(const CBiPoly& a, const CBiPoly& b) {
    if (a.wc.empty() || b.wc.empty()) return CBiPoly();
    std::vector<CPoly> r(a.wc.size() + b.wc.size() - 1);
    for (size_t i = 0; i < a.wc.size(); ++i)
      for (size_t j = 0; j < b.wc.size(); ++j) r[i + j] = cadd(r[i + j], cmul(a.wc[i], b.wc[j]));
    return CBiPoly(std::move(r));
  }
  friend CBiPoly operator*(Cplx s, const CBiPoly& a) {
    std::vector<CPoly> r(a.wc.size());
    for (size_t j = 0; j < a.wc.size(); ++j) r[j] = cscale(s, a.wc[j]);
    return CBiPoly(std::move(r));
  }
  friend CBiPoly operator-(const CBiPoly& a, const CBiPoly& b) { return a + (Cplx{-1, 0} * b); }

  double norm1() const {
    double s = 0;
    for (const auto& c : wc) s += cnorm1(c);
    return s;
  }

  /// Truncate z-degrees and w-degree in place.
  void truncate(int max_z, int max_w) {
    if (max_w + 1 < static_cast<int>(wc.size())) wc.resize(static_cast<size_t>(max_w) + 1);
    for (auto& c : wc)
      if (static_cast<int>(c.size()) > max_z + 1) c.resize(static_cast<size_t>(max_z) + 1);
    trim();
  }

  /// P(z, w + g(z, w)) expanded, then truncated to the given window.
  CBiPoly compose_shift(const CBiPoly& g, int max_z, int max_w) const {
    CBiPoly shift({CPoly{}, CPoly{Cplx{1, 0}}});  // w
    shift = shift + g;
    CBiPoly r;
    for (size_t j = wc.size(); j-- > 0;) {
      r = r * shift;
      r = r + CBiPoly({wc[j]});
      r.truncate(max_z, max_w);
    }
    return r;
  }
};

namespace detail {

/// Complex determinant of the Sylvester matrix of the fibers f(z0,.), g(z0,.).
inline Cplx sylvester_det_at(const CBiPoly& f, const CBiPoly& g, Cplx z0, int m, int n) {
  CPoly fc = f.fiber(z0);
  CPoly gc = g.fiber(z0);
  fc.resize(static_cast<size_t>(m) + 1, Cplx{0, 0});
  gc.resize(static_cast<size_t>(n) + 1, Cplx{0, 0});
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(m + n, m + n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s(r, r + k) = fc[static_cast<size_t>(m - k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s(n + r, r + k) = gc[static_cast<size_t>(n - k)];
  return s.partialPivLu().determinant();
}

/// Recover polynomial coefficients (degree < count) from samples on R * (roots of unity).
inline CPoly idft_coeffs(const std::vector<Cplx>& samples, double radius) {
  const size_t M = samples.size();
  CPoly c(M, Cplx{0, 0});
  const double twopi = 2.0 * M_PI;
  for (size_t j = 0; j < M; ++j) {
    Cplx acc{0, 0};
    for (size_t k = 0; k < M; ++k) {
      double ang = -twopi * static_cast<double>(j) * static_cast<double>(k) / static_cast<double>(M);
      acc += samples[k] * Cplx{std::cos(ang), std::sin(ang)};
    }
    c[j] = acc / (static_cast<double>(M) * std::pow(radius, static_cast<double>(j)));
  }
  return c;
}

}  // namespace detail

/// Floating-point resultant with respect to w (same layout and sign
/// convention as the exact resultant_w), via interpolation over circle samples.
inline CPoly cresultant_w(const CBiPoly& f, const CBiPoly& g, double rel_trim = 1e-10) {
  const int m = f.degree_w(), n = g.degree_w();
  if (m <= 0 && n <= 0) return {Cplx{1, 0}};
  if (m <= 0) {
    CPoly base = f.empty() ? CPoly{} : f.wc[0];
    CPoly r{Cplx{1, 0}};
    for (int k = 0; k < n; ++k) r = cmul(r, base);
    return r;
  }
  if (n <= 0) {
    CPoly base = g.empty() ? CPoly{} : g.wc[0];
    CPoly r{Cplx{1, 0}};
    for (int k = 0; k < m; ++k) r = cmul(r, base);
    return r;
  }
  const int bound = n * f.degree_z() + m * g.degree_z();
  const int M = bound + 1;
  const double R = 1.0;
  std::vector<Cplx> samples(static_cast<size_t>(M));
  for (int k = 0; k < M; ++k) {
    double ang = 2.0 * M_PI * k / M;
    samples[static_cast<size_t>(k)] = detail::sylvester_det_at(f, g, R * Cplx{std::cos(ang), std::sin(ang)}, m, n);
  }
  CPoly c = detail::idft_coeffs(samples, R);
  double top = 0;
  for (auto& v : c) top = std::max(top, std::abs(v));
  ctrim(c, rel_trim * top);
  return c;
}

/// Discriminant of a monic-in-w float polynomial, matching discriminant_w.
inline CPoly cdiscriminant_w(const CBiPoly& p, double rel_trim = 1e-10) {
  const int d = p.degree_w();
  require(d >= 2, ErrKind::InvalidInput, "discriminant needs degree >= 2");
  CPoly r = cresultant_w(p, p.deriv_w(), rel_trim);
  if ((static_cast<long>(d) * (d - 1) / 2) % 2 != 0)
    for (auto& c : r) c = -c;
  return r;
}

}  // namespace curvedef
