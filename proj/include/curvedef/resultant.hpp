#pragma once

#include <vector>

#include "curvedef/bipoly.hpp"
#include "curvedef/polymatrix.hpp"

namespace curvedef {

/// Sylvester matrix of f and g with respect to w, entries in Q(i)[z].
/// Rows carry coefficients in descending w-powers, f-rows first.
inline PolyMatrix sylvester_w(const BiPoly& f, const BiPoly& g) {
  const int m = f.degree_w(), n = g.degree_w();
  require(m >= 1 && n >= 1, ErrKind::InvalidInput, "sylvester_w needs positive w-degrees");
  auto fc = f.w_coeffs();  // index = w-power
  auto gc = g.w_coeffs();
  PolyMatrix s(m + n, m + n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s.at(r, r + k) = fc[static_cast<size_t>(m - k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s.at(n + r, r + k) = gc[static_cast<size_t>(n - k)];
  return s;
}

/// Resultant of f and g with respect to w, exact.
///
/// Sign convention: the determinant of the Sylvester matrix with the f-rows
/// first, coefficients in descending w-powers (fixed by a regression test).
/// When one argument is constant in w, Res(f, g) = f^deg_w(g) (resp. g^deg_w(f)).
inline UniPoly resultant_w(const BiPoly& f, const BiPoly& g) {
  require(!(f.is_zero() && g.is_zero()), ErrKind::InvalidInput, "resultant of two zero polynomials");
  const int m = f.degree_w(), n = g.degree_w();
  if (m == 0 && n == 0) return UniPoly::one();
  if (m == 0) {
    UniPoly base = f.w_coeffs()[0];
    UniPoly r = UniPoly::one();
    for (int k = 0; k < n; ++k) r *= base;
    return r;
  }
  if (n == 0) {
    UniPoly base = g.w_coeffs()[0];
    UniPoly r = UniPoly::one();
    for (int k = 0; k < m; ++k) r *= base;
    return r;
  }
  return det(sylvester_w(f, g));
}

/// Discriminant of a Weierstrass polynomial with respect to w:
/// (-1)^{d(d-1)/2} * Res_w(P, dP/dw). For P with simple fiber roots over every
/// z this has no zeros; it is squarefree exactly when the projection has only
/// simple branchings over pairwise distinct points.
inline UniPoly discriminant_w(const WeierstrassPoly& p) {
  const int d = p.degree();
  require(d >= 2, ErrKind::InvalidInput, "discriminant needs degree >= 2");
  UniPoly r = resultant_w(p.base(), p.base().derivative_w());
  const bool negate = ((static_cast<long>(d) * (d - 1) / 2) % 2) != 0;
  return negate ? -r : r;
}

}  // namespace curvedef
