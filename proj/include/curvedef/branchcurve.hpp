#pragma once

#include <vector>

#include "curvedef/cpoly.hpp"
#include "curvedef/polymatrix.hpp"

namespace curvedef {

/// A parameterized rational branch zeta -> (zc(zeta), wc(zeta)); zc is monic.
struct ParamBranch {
  CPoly zc;  // monic in zeta
  CPoly wc;
};

namespace detail {

/// Resultant in zeta of A(zeta) - z and B(zeta) - w via evaluation on a
/// (z, w) grid of scaled roots of unity and a tensor inverse DFT. Entries of
/// the Sylvester matrix depend on (z, w) only through the constant-in-zeta
/// coefficients, so the degree bounds are deg_zeta(B) in z and deg_zeta(A) in w.
inline CBiPoly eliminate_branch(const CPoly& zc, const CPoly& wc) {
  CPoly A = zc, B = wc;
  ctrim(A, 0.0);
  ctrim(B, 1e-13 * (cnorm1(B) + 1.0));
  const int da = cdegree(A);
  require(da >= 1, ErrKind::InvalidInput, "branch z-component must be nonconstant");
  const int db = std::max(cdegree(B), 0);

  if (db == 0) {
    // w-component constant: Res = (c - w)^{da}, i.e. (w - c)^{da} up to sign
    Cplx c = B.empty() ? Cplx{0, 0} : B[0];
    CBiPoly lin({CPoly{-c}, CPoly{Cplx{1, 0}}});
    CBiPoly r({CPoly{Cplx{1, 0}}});
    for (int k = 0; k < da; ++k) r = r * lin;
    return r;
  }

  const int Mz = db + 1, Mw = da + 1;
  const double Rz = 1.0, Rw = 1.0;
  // samples[a][b] = det Sylvester(A - z_a, B - w_b)
  std::vector<std::vector<Cplx>> samples(static_cast<size_t>(Mz), std::vector<Cplx>(static_cast<size_t>(Mw)));
  for (int a = 0; a < Mz; ++a) {
    double angz = 2.0 * M_PI * a / Mz;
    Cplx zval = Rz * Cplx{std::cos(angz), std::sin(angz)};
    CPoly Az = A;
    Az[0] -= zval;
    for (int b = 0; b < Mw; ++b) {
      double angw = 2.0 * M_PI * b / Mw;
      Cplx wval = Rw * Cplx{std::cos(angw), std::sin(angw)};
      CPoly Bw = B;
      Bw[0] -= wval;
      // Sylvester in zeta of (Az, Bw): da + db square
      Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(da + db, da + db);
      for (int r = 0; r < db; ++r)
        for (int k = 0; k <= da; ++k) s(r, r + k) = Az[static_cast<size_t>(da - k)];
      for (int r = 0; r < da; ++r)
        for (int k = 0; k <= db; ++k) s(db + r, r + k) = Bw[static_cast<size_t>(db - k)];
      samples[static_cast<size_t>(a)][static_cast<size_t>(b)] = s.partialPivLu().determinant();
    }
  }
  // tensor inverse DFT: first over z, then over w
  std::vector<CPoly> wc_out(static_cast<size_t>(Mw));
  for (int j = 0; j < Mw; ++j) {
    // for fixed w-index j we need the w-coefficient polynomial in z
    std::vector<Cplx> col(static_cast<size_t>(Mz));
    for (int a = 0; a < Mz; ++a) {
      // inverse DFT over the w samples for row a
      Cplx acc{0, 0};
      for (int b = 0; b < Mw; ++b) {
        double ang = -2.0 * M_PI * j * b / Mw;
        acc += samples[static_cast<size_t>(a)][static_cast<size_t>(b)] * Cplx{std::cos(ang), std::sin(ang)};
      }
      col[static_cast<size_t>(a)] = acc / (static_cast<double>(Mw) * std::pow(Rw, j));
    }
    wc_out[static_cast<size_t>(j)] = detail::idft_coeffs(col, Rz);
  }
  CBiPoly out(std::move(wc_out));
  out.trim(1e-12 * (out.norm1() + 1.0));
  return out;
}

}  // namespace detail

/// Weierstrass polynomial (monic in w) of the union of parameterized branches.
inline CBiPoly curve_from_branches(const std::vector<ParamBranch>& branches) {
  require(!branches.empty(), ErrKind::InvalidInput, "no branches");
  CBiPoly F({CPoly{Cplx{1, 0}}});
  for (const auto& b : branches) F = F * detail::eliminate_branch(b.zc, b.wc);
  // normalize the constant leading w-coefficient to exactly 1
  int dw = F.degree_w();
  require(dw >= 1 && cdegree(F.wc.back()) == 0, ErrKind::InternalInconsistency,
          "branch elimination produced a non-monic curve");
  Cplx lead = F.wc.back()[0];
  F = (1.0 / lead) * F;
  return F;
}

/// A branch with exact rational coefficients: zeta -> (zc(zeta), wc(zeta)).
struct ExactBranch {
  UniPoly zc;  // monic in zeta
  UniPoly wc;
};

namespace detail {

/// Exact resultant in zeta of (zc(zeta) - z, wc(zeta) - w): evaluate the
/// scalar Sylvester determinant on a rational (z, w) grid and interpolate.
inline BiPoly eliminate_branch_exact(const UniPoly& zc, const UniPoly& wc) {
  const int da = zc.degree();
  require(da >= 1, ErrKind::InvalidInput, "branch z-component must be nonconstant");
  require(zc.lead() == GaussRat(1), ErrKind::InvalidInput, "branch z-component must be monic");
  const int db = std::max(wc.degree(), 0);

  if (db == 0) {
    // Res(A, c - w) = (c - w)^da
    BiPoly lin = BiPoly(wc.coeff(0)) - BiPoly::w();
    BiPoly r(1);
    for (int k = 0; k < da; ++k) r *= lin;
    return r;
  }

  auto zs = curvedef::detail::sample_points(db + 1);
  auto ws = curvedef::detail::sample_points(da + 1);
  // dets[a][b] = det Sylvester(zc - zs[a], wc - ws[b])
  std::vector<std::vector<GaussRat>> dets(zs.size(), std::vector<GaussRat>(ws.size()));
  const int n = da + db;
  for (size_t a = 0; a < zs.size(); ++a) {
    for (size_t b = 0; b < ws.size(); ++b) {
      std::vector<std::vector<GaussRat>> m(static_cast<size_t>(n), std::vector<GaussRat>(static_cast<size_t>(n)));
      for (int r = 0; r < db; ++r)
        for (int k = 0; k <= da; ++k) {
          GaussRat v = zc.coeff(da - k);
          if (da - k == 0) v -= GaussRat(zs[a]);
          m[static_cast<size_t>(r)][static_cast<size_t>(r + k)] = v;
        }
      for (int r = 0; r < da; ++r)
        for (int k = 0; k <= db; ++k) {
          GaussRat v = wc.coeff(db - k);
          if (db - k == 0) v -= GaussRat(ws[b]);
          m[static_cast<size_t>(db + r)][static_cast<size_t>(r + k)] = v;
        }
      dets[a][b] = curvedef::detail::det_scalar(std::move(m));
    }
  }
  // interpolate in w for each z sample, then in z per w-power
  std::vector<UniPoly> in_w(zs.size());
  for (size_t a = 0; a < zs.size(); ++a) {
    std::vector<GaussRat> ys(ws.size());
    for (size_t b = 0; b < ws.size(); ++b) ys[b] = dets[a][b];
    in_w[a] = curvedef::detail::interpolate(ws, ys);
  }
  std::vector<UniPoly> wrows(static_cast<size_t>(da) + 1);  // index = w-power, value = z-poly
  for (int j = 0; j <= da; ++j) {
    std::vector<GaussRat> ys(zs.size());
    for (size_t a = 0; a < zs.size(); ++a) ys[a] = in_w[a].coeff(j);
    wrows[static_cast<size_t>(j)] = curvedef::detail::interpolate(zs, ys);
  }
  return BiPoly::from_w_coeffs(wrows);
}

}  // namespace detail

/// Exact Weierstrass polynomial of the union of exact rational branches.
inline BiPoly curve_from_branches_exact(const std::vector<ExactBranch>& branches) {
  require(!branches.empty(), ErrKind::InvalidInput, "no branches");
  BiPoly F(1);
  for (const auto& b : branches) F *= detail::eliminate_branch_exact(b.zc, b.wc);
  UniPoly lead = F.lead_w();
  require(lead.degree() == 0 && !lead.coeff(0).is_zero(), ErrKind::InternalInconsistency,
          "exact branch elimination produced a non-monic curve");
  return lead.coeff(0).inv() * F;
}

}  // namespace curvedef
