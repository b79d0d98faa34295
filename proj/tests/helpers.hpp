#pragma once

#include <random>

#include "curvedef/bipoly.hpp"
#include "curvedef/polymatrix.hpp"

namespace curvedef::testing {

inline GaussRat random_gaussrat(std::mt19937_64& rng, int span = 3) {
  std::uniform_int_distribution<int> d(-span, span);
  return GaussRat(Rat(d(rng)), Rat(d(rng)));
}

inline UniPoly random_unipoly(std::mt19937_64& rng, int deg, int span = 3) {
  std::vector<GaussRat> c(static_cast<size_t>(deg) + 1);
  for (auto& x : c) x = random_gaussrat(rng, span);
  return UniPoly(std::move(c));
}

/// Random BiPoly with exact w-degree dw and z-degrees <= dz.
inline BiPoly random_bipoly(std::mt19937_64& rng, int dz, int dw, int span = 2) {
  std::uniform_int_distribution<int> d(-span, span);
  BiPoly p;
  for (int j = 0; j <= dw; ++j)
    for (int i = 0; i <= dz; ++i) p.add_term(i, j, GaussRat(Rat(d(rng))));
  while (p.degree_w() != dw) {
    p.add_term(0, dw, GaussRat(1));
  }
  return p;
}

/// Independent determinant oracle: cofactor expansion over exact polynomials.
/// No interpolation, no elimination; only usable for small matrices.
inline UniPoly det_cofactor(const PolyMatrix& m) {
  const int n = m.rows();
  if (n == 0) return UniPoly::one();
  if (n == 1) return m.at(0, 0);
  UniPoly acc;
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j).is_zero()) continue;
    PolyMatrix sub(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        sub.at(r - 1, cc++) = m.at(r, c);
      }
    }
    UniPoly term = m.at(0, j) * det_cofactor(sub);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace curvedef::testing
