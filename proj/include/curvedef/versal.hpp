#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "curvedef/branchcurve.hpp"
#include "curvedef/classify.hpp"
#include "curvedef/polymatrix.hpp"
#include "curvedef/singularity.hpp"

namespace curvedef {

namespace detail {

/// Remainder of A mod B in w, B monic in w; coefficients stay in Q(i)[z].
inline std::vector<UniPoly> bipoly_mod_w(std::vector<UniPoly> a, const std::vector<UniPoly>& b) {
  const int d = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= d) {
    UniPoly f = a.back();
    if (!f.is_zero()) {
      size_t off = a.size() - 1 - static_cast<size_t>(d);
      for (int k = 0; k <= d; ++k) a[off + static_cast<size_t>(k)] -= f * b[static_cast<size_t>(k)];
    }
    a.pop_back();
  }
  a.resize(static_cast<size_t>(d), UniPoly());
  return a;
}

}  // namespace detail

/// The versal family of the pair (germ, projection): P(z,w;s) = P0 + sum s_i phi_i.
struct VersalFamily {
  WeierstrassPoly P0;
  std::vector<BiPoly> basis;  // phi_i, each of w-degree <= d-1, exact
  int n = 0;
  int d = 0;
  GaussRat shear{0};  // normalization shear of the underlying germ

  // diagonalization data for exact cokernel coordinates
  PolyMatrix U;
  std::vector<UniPoly> diag;
  std::vector<int> orders;  // ord_0 of each diagonal entry

  // cached float forms
  CBiPoly P0f;
  std::vector<CBiPoly> basisf;

  CBiPoly fiber_poly(const std::vector<Cplx>& s) const {
    require(static_cast<int>(s.size()) == n, ErrKind::InvalidInput, "family point has wrong dimension");
    CBiPoly f = P0f;
    for (size_t i = 0; i < s.size(); ++i)
      if (s[i] != Cplx{0, 0}) f = f + s[i] * basisf[i];
    return f;
  }
};

/// A parameter vector of the versal family with its cached fiber polynomial.
struct FamilyPoint {
  std::vector<Cplx> s;
  CBiPoly fiber;
};

inline FamilyPoint family_point(const VersalFamily& fam, std::vector<Cplx> s) {
  FamilyPoint pt;
  pt.fiber = fam.fiber_poly(s);
  pt.s = std::move(s);
  return pt;
}

/// T^1 basis from the Smith form of the multiplication-by-dP0/dw matrix on
/// the basis {1, w, ..., w^{d-1}} of Q(i)[z][w]/(P0): for each diagonal entry
/// with a zero of order m at z = 0, the corresponding column of U^{-1} times
/// z^l (l < m) descends to a basis vector of the localized cokernel.
inline VersalFamily t1_basis(const WeierstrassPoly& P0, const GaussRat& shear = GaussRat(0)) {
  const int d = P0.degree();
  require(d >= 2, ErrKind::InvalidInput, "family needs projection degree >= 2");
  const int n_expected = t1_length(P0, true);
  require(t1_length(P0, false) == n_expected, ErrKind::InvalidInput,
          "germ has singular fibers away from the origin inside the disc");

  auto p0c = P0.base().w_coeffs();
  BiPoly Pw = P0.base().derivative_w();

  PolyMatrix M(d, d);
  std::vector<UniPoly> col = Pw.w_coeffs();
  col.resize(static_cast<size_t>(d), UniPoly());
  for (int j = 0; j < d; ++j) {
    if (j > 0) {
      // multiply by w and reduce mod P0
      std::vector<UniPoly> shifted(col.size() + 1);
      for (size_t k = 0; k < col.size(); ++k) shifted[k + 1] = col[k];
      col = detail::bipoly_mod_w(std::move(shifted), p0c);
    }
    for (int i = 0; i < d; ++i) M.at(i, j) = col[static_cast<size_t>(i)];
  }

  SmithResult snf = smith_normal_form(M);
  VersalFamily fam{P0};
  fam.d = d;
  fam.shear = shear;
  fam.U = snf.U;
  for (int i = 0; i < d; ++i) {
    fam.diag.push_back(snf.D.at(i, i));
    fam.orders.push_back(snf.D.at(i, i).ord0());
  }
  int n = 0;
  for (int i = 0; i < d; ++i) {
    int m = fam.orders[static_cast<size_t>(i)];
    if (m <= 0) continue;
    std::vector<UniPoly> colv(static_cast<size_t>(d));
    for (int r = 0; r < d; ++r) colv[static_cast<size_t>(r)] = snf.Uinv.at(r, i);
    BiPoly phi0 = BiPoly::from_w_coeffs(colv);
    for (int l = 0; l < m; ++l) {
      BiPoly phi = phi0;
      for (int t = 0; t < l; ++t) phi *= BiPoly::z();
      fam.basis.push_back(phi);
      ++n;
    }
  }
  require(n == n_expected, ErrKind::InternalInconsistency,
          "Smith-form parameter count disagrees with the discriminant order");
  fam.n = n;

  fam.P0f = CBiPoly::from_exact(P0.base());
  for (const auto& phi : fam.basis) fam.basisf.push_back(CBiPoly::from_exact(phi));
  return fam;
}

/// Exact coordinates of a polynomial in the localized cokernel
/// O/(P0, dP0/dw) at the origin: an n-dimensional vector; two polynomials
/// represent the same class iff their coordinates agree.
inline std::vector<GaussRat> local_coordinates(const VersalFamily& fam, const BiPoly& psi) {
  auto vec = psi.w_coeffs();
  vec.resize(static_cast<size_t>(fam.d), UniPoly());
  vec = detail::bipoly_mod_w(std::move(vec), fam.P0.base().w_coeffs());
  // v = U * vec
  std::vector<UniPoly> v(static_cast<size_t>(fam.d));
  for (int i = 0; i < fam.d; ++i)
    for (int j = 0; j < fam.d; ++j) v[static_cast<size_t>(i)] += fam.U.at(i, j) * vec[static_cast<size_t>(j)];
  std::vector<GaussRat> coords;
  for (int i = 0; i < fam.d; ++i) {
    int m = fam.orders[static_cast<size_t>(i)];
    if (m <= 0) continue;
    // divide by the unit part of the diagonal entry modulo z^m
    UniPoly unit = fam.diag[static_cast<size_t>(i)].shifted_down(m);
    std::vector<GaussRat> inv(static_cast<size_t>(m));
    inv[0] = unit.coeff(0).inv();
    for (int k = 1; k < m; ++k) {
      GaussRat acc(0);
      for (int j = 1; j <= k; ++j) acc += unit.coeff(j) * inv[static_cast<size_t>(k - j)];
      inv[static_cast<size_t>(k)] = -(acc * inv[0]);
    }
    for (int k = 0; k < m; ++k) {
      GaussRat c(0);
      for (int j = 0; j <= k; ++j) c += v[static_cast<size_t>(i)].coeff(j) * inv[static_cast<size_t>(k - j)];
      coords.push_back(c);
    }
  }
  return coords;
}

/// Classified singular data of the fiber over s.
inline FiberReport fiber_analyze(const VersalFamily& fam, const FamilyPoint& pt,
                                 const ClassifyOptions& opt = {}) {
  return classify_curve(pt.fiber, opt);
}

/// Solution of the gauge decomposition
///   F = G * (P0 + sum s_i phi_i)(z, w + g(z, w)).
/// The whole family member is composed with the vertical reparameterization,
/// so (z, w) -> (z, w+g) carries the curve of F onto the fiber over s and the
/// fiber invariants (nodes, branch divisor) of both agree on the nose.
struct GaugeSolution {
  CBiPoly G;  // w-degree <= d-1, unit (constant term away from 0)
  CBiPoly g;  // w-degree <= d
  std::vector<Cplx> s;
  double residual = 0.0;
};

namespace detail {

struct GaugeWindow {
  int max_z, max_w;
};

inline CBiPoly gauge_member(const VersalFamily& fam, const std::vector<Cplx>& s) {
  CBiPoly inner = fam.P0f;
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i] != Cplx{0, 0}) inner = inner + s[i] * fam.basisf[i];
  return inner;
}

inline CBiPoly gauge_reconstruct(const VersalFamily& fam, const GaugeSolution& sol, const GaugeWindow& win) {
  CBiPoly inner = gauge_member(fam, sol.s);
  CBiPoly shifted = inner.compose_shift(sol.g, win.max_z, win.max_w);
  CBiPoly rec = sol.G * shifted;
  rec.truncate(win.max_z, win.max_w);
  return rec;
}

inline double window_norm(const CBiPoly& a, const GaugeWindow& win) {
  double s = 0;
  for (int j = 0; j < static_cast<int>(a.wc.size()) && j <= win.max_w; ++j)
    for (int k = 0; k < static_cast<int>(a.wc[static_cast<size_t>(j)].size()) && k <= win.max_z; ++k)
      s = std::max(s, std::abs(a.wc[static_cast<size_t>(j)][static_cast<size_t>(k)]));
  return s;
}

}  // namespace detail

/// Project a polynomial near the family (Gauss-Newton on (G, g, s); the inner
/// linear step is the Sylvester-structured system of the pair
/// (P0, dP0/dw) augmented with the basis columns, solved in least-squares /
/// minimal-norm sense). Converges to window residual <= 1e-10 or raises
/// projection-failure with the final residual.
inline GaugeSolution project_to_family(const VersalFamily& fam, const CBiPoly& F, int truncation = -1) {
  const int d = fam.d;
  const int dF = F.degree_w();
  require(dF >= d, ErrKind::InvalidInput, "input has lower w-degree than the family");
  const int dG = dF - d;
  require(dG <= d - 1, ErrKind::InvalidInput, "gauge factor degree out of range");
  const int dg = d;  // w-degree bound of the vertical reparameterization

  int N = truncation > 0 ? truncation : 2 * fam.P0.base().degree_z() + 4;
  double fscale = std::max(1.0, F.norm1());

  for (int round = 0; round < 2; ++round, N *= 2) {
    detail::GaugeWindow win{N, dF + d};
    GaugeSolution sol;
    sol.G = CBiPoly({CPoly{Cplx{1, 0}}});
    {
      // init G with the leading w-coefficient scale of F
      Cplx lead = F.wc.back()[0];
      std::vector<CPoly> gw(static_cast<size_t>(dG) + 1);
      gw[static_cast<size_t>(dG)] = CPoly{lead};
      sol.G = CBiPoly(std::move(gw));
    }
    sol.g = CBiPoly();
    sol.s.assign(static_cast<size_t>(fam.n), Cplx{0, 0});

    const int rows_w = win.max_w + 1, rows_z = win.max_z + 1;
    const int n_g_unknowns = (dG + 1) * rows_z + (dg + 1) * rows_z;
    const int n_unknowns = n_g_unknowns + fam.n;
    const int n_rows = rows_w * rows_z;

    auto coeff_index = [&](int wdeg, int zdeg) { return wdeg * rows_z + zdeg; };
    auto put = [&](Eigen::MatrixXcd& A, int colbase, int wj, int zk, const CBiPoly& val) {
      // column gets coefficients of val * w^wj * z^zk over the window
      for (int j = 0; j < static_cast<int>(val.wc.size()); ++j) {
        if (j + wj > win.max_w) break;
        const CPoly& c = val.wc[static_cast<size_t>(j)];
        for (int k = 0; k < static_cast<int>(c.size()); ++k) {
          if (k + zk > win.max_z) break;
          A(coeff_index(j + wj, k + zk), colbase) += c[static_cast<size_t>(k)];
        }
      }
    };

    double res_norm = 1e300;
    for (int iter = 0; iter < 50; ++iter) {
      CBiPoly recon = detail::gauge_reconstruct(fam, sol, win);
      CBiPoly resid = F - recon;
      resid.truncate(win.max_z, win.max_w);
      res_norm = detail::window_norm(resid, win) / fscale;
      if (res_norm <= 1e-12) break;

      CBiPoly member = detail::gauge_member(fam, sol.s);
      CBiPoly member_shift = member.compose_shift(sol.g, win.max_z, win.max_w);
      CBiPoly GdPw = sol.G * member.deriv_w().compose_shift(sol.g, win.max_z, win.max_w);
      GdPw.truncate(win.max_z, win.max_w);

      Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n_rows, n_unknowns);
      Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n_rows);
      for (int j = 0; j < static_cast<int>(resid.wc.size()); ++j)
        for (int k = 0; k < static_cast<int>(resid.wc[static_cast<size_t>(j)].size()); ++k)
          b(coeff_index(j, k)) = resid.wc[static_cast<size_t>(j)][static_cast<size_t>(k)];

      int colidx = 0;
      for (int j = 0; j <= dG; ++j)
        for (int k = 0; k <= win.max_z; ++k) put(A, colidx++, j, k, member_shift);
      for (int j = 0; j <= dg; ++j)
        for (int k = 0; k <= win.max_z; ++k) put(A, colidx++, j, k, GdPw);
      for (int i = 0; i < fam.n; ++i) {
        CBiPoly Gphi = sol.G * fam.basisf[static_cast<size_t>(i)].compose_shift(sol.g, win.max_z, win.max_w);
        Gphi.truncate(win.max_z, win.max_w);
        put(A, colidx++, 0, 0, Gphi);
      }

      Eigen::VectorXcd delta = A.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);

      // apply the update
      int c = 0;
      for (int j = 0; j <= dG; ++j)
        for (int k = 0; k <= win.max_z; ++k) {
          if (static_cast<int>(sol.G.wc.size()) <= j) sol.G.wc.resize(static_cast<size_t>(j) + 1);
          if (static_cast<int>(sol.G.wc[static_cast<size_t>(j)].size()) <= k)
            sol.G.wc[static_cast<size_t>(j)].resize(static_cast<size_t>(k) + 1, Cplx{0, 0});
          sol.G.wc[static_cast<size_t>(j)][static_cast<size_t>(k)] += delta(c++);
        }
      for (int j = 0; j <= dg; ++j)
        for (int k = 0; k <= win.max_z; ++k) {
          if (static_cast<int>(sol.g.wc.size()) <= j) sol.g.wc.resize(static_cast<size_t>(j) + 1);
          if (static_cast<int>(sol.g.wc[static_cast<size_t>(j)].size()) <= k)
            sol.g.wc[static_cast<size_t>(j)].resize(static_cast<size_t>(k) + 1, Cplx{0, 0});
          sol.g.wc[static_cast<size_t>(j)][static_cast<size_t>(k)] += delta(c++);
        }
      for (int i = 0; i < fam.n; ++i) sol.s[static_cast<size_t>(i)] += delta(c++);
    }

    if (res_norm <= 1e-10) {
      sol.residual = res_norm;
      sol.G.trim(0.0);
      sol.g.trim(0.0);
      return sol;
    }
    if (round == 1) {
      Error e(ErrKind::ProjectionFailure, "gauge projection did not converge");
      e.with_residual(res_norm);
      throw e;
    }
  }
  fail(ErrKind::ProjectionFailure, "unreachable");
}

/// Perturb every Puiseux branch of the germ by random lower-order terms in
/// its z-component, interpolate the resulting curve, project it into the
/// family and keep the draw whose fiber carries delta nodes.
inline FamilyPoint max_nodal_member(const VersalFamily& fam, const SingularityReport& report,
                                    double magnitude = 5e-2) {
  require(!report.branches.empty(), ErrKind::InvalidInput, "report carries no branches");
  require(magnitude >= 1e-3 && magnitude <= 1e-1, ErrKind::InvalidInput, "magnitude out of range");
  int best_nu = -1;
  double best_res = 0;
  for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
    auto rng = make_rng(0x6d61786e ^ (attempt * 1315423911ULL));
    std::uniform_real_distribution<double> mag(0.5 * magnitude, magnitude), ang(0.0, 2.0 * M_PI);
    std::vector<ExactBranch> eb;
    for (const auto& b : report.branches) {
      ExactBranch x;
      std::vector<GaussRat> zc(static_cast<size_t>(b.ram) + 1);
      zc[static_cast<size_t>(b.ram)] = GaussRat(1);
      for (int k = 0; k < b.ram; ++k) {
        double m = mag(rng), a = ang(rng);
        zc[static_cast<size_t>(k)] = rationalize(m * Cplx{std::cos(a), std::sin(a)});
      }
      x.zc = UniPoly(std::move(zc));
      CPoly phi = b.phi;
      ctrim(phi, 1e-9 * (cnorm1(phi) + 1.0));
      std::vector<GaussRat> wc(phi.size());
      for (size_t k = 0; k < phi.size(); ++k) wc[k] = rationalize(phi[k]);
      x.wc = UniPoly(std::move(wc));
      eb.push_back(std::move(x));
    }
    try {
      BiPoly Fx = curve_from_branches_exact(eb);
      CBiPoly F = CBiPoly::from_exact(Fx);
      GaugeSolution sol = project_to_family(fam, F);
      FamilyPoint pt = family_point(fam, sol.s);
      FiberReport rep = fiber_analyze(fam, pt);
      if (rep.classification == FiberClass::NodalGeneric && rep.nu == report.delta) return pt;
      if (rep.nu > best_nu) {
        best_nu = rep.nu;
        best_res = sol.residual;
      }
    } catch (const Error&) {
      continue;  // bad draw; try another
    }
  }
  Error e(ErrKind::ConstructionFailure,
          "no draw reached the full node count; best was " + std::to_string(std::max(best_nu, 0)));
  e.with_residual(best_res);
  throw e;
}

/// Newton solve for a nearby parameter where the kept nodes persist (free
/// locations) and each smoothed node is opened up by a fixed amount.
inline FamilyPoint smooth_nodes(const VersalFamily& fam, const FamilyPoint& pt,
                                const std::vector<int>& keep) {
  FiberReport rep = fiber_analyze(fam, pt);
  require(rep.classification == FiberClass::NodalGeneric, ErrKind::InvalidInput,
          "smoothing requires a nodal-generic fiber");
  const int nu = rep.nu;
  for (int k : keep) require(k >= 0 && k < nu, ErrKind::InvalidInput, "keep index out of range");
  if (static_cast<int>(keep.size()) == nu) return pt;

  std::vector<bool> kept(static_cast<size_t>(nu), false);
  for (int k : keep) kept[static_cast<size_t>(k)] = true;

  const double scale = std::max(1.0, pt.fiber.norm1());

  // opening size per node, set by the local geometry: the node splits into
  // branch points at distance ~ sqrt(eps/|hess|), which must stay well inside
  // the gap to the nearest other event
  auto event_gap = [&](int i) {
    double r = 0.3;
    for (int j = 0; j < nu; ++j)
      if (j != i) r = std::min(r, std::abs(rep.nodes[static_cast<size_t>(i)].z - rep.nodes[static_cast<size_t>(j)].z));
    for (const auto& bp : rep.branch_points)
      r = std::min(r, std::abs(rep.nodes[static_cast<size_t>(i)].z - bp.z));
    return std::max(r, 1e-3);
  };
  CBiPoly P0w = pt.fiber.deriv_w(), P0z = pt.fiber.deriv_z();
  CBiPoly H_zz = P0z.deriv_z(), H_zw = P0z.deriv_w(), H_ww = P0w.deriv_w();

  // every node keeps a tracked critical point (dP/dz = dP/dw = 0); kept nodes
  // pin the critical value to 0, smoothed ones to a small opening value
  std::vector<Cplx> s = pt.s;
  std::vector<Cplx> zs(static_cast<size_t>(nu)), ws(static_cast<size_t>(nu));
  std::vector<Cplx> targets(static_cast<size_t>(nu), Cplx{0, 0});
  for (int i = 0; i < nu; ++i) {
    const NodePoint& nd = rep.nodes[static_cast<size_t>(i)];
    zs[static_cast<size_t>(i)] = nd.z;
    ws[static_cast<size_t>(i)] = nd.w;
    if (!kept[static_cast<size_t>(i)]) {
      double hess = std::sqrt(std::abs(H_zz.eval(nd.z, nd.w) * H_ww.eval(nd.z, nd.w) -
                                       H_zw.eval(nd.z, nd.w) * H_zw.eval(nd.z, nd.w)));
      double open = 0.15 * event_gap(i);
      double eps_open = 0.5 * std::max(hess, 1e-6) * open * open;
      double phase = 2.0 * M_PI * (static_cast<double>(i) + 0.25) / std::max(1, nu);
      targets[static_cast<size_t>(i)] = eps_open * Cplx{std::cos(phase), std::sin(phase)};
    }
  }
  const int K = static_cast<int>(keep.size());
  const int n_unknowns = fam.n + 2 * nu;
  const int n_eqs = 3 * nu;

  double resid = 1e300;
  for (int iter = 0; iter < 60; ++iter) {
    CBiPoly P = fam.fiber_poly(s);
    CBiPoly Pw = P.deriv_w(), Pz = P.deriv_z();
    CBiPoly Pzz = Pz.deriv_z(), Pzw = Pz.deriv_w(), Pww = Pw.deriv_w();

    Eigen::VectorXcd Fv(n_eqs);
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n_eqs, n_unknowns);
    int r = 0;
    for (int k = 0; k < nu; ++k) {
      Cplx z = zs[static_cast<size_t>(k)], w = ws[static_cast<size_t>(k)];
      Fv(r + 0) = P.eval(z, w) - targets[static_cast<size_t>(k)];
      Fv(r + 1) = Pw.eval(z, w);
      Fv(r + 2) = Pz.eval(z, w);
      for (int i = 0; i < fam.n; ++i) {
        const CBiPoly& phi = fam.basisf[static_cast<size_t>(i)];
        J(r + 0, i) = phi.eval(z, w);
        J(r + 1, i) = phi.deriv_w().eval(z, w);
        J(r + 2, i) = phi.deriv_z().eval(z, w);
      }
      int zc = fam.n + 2 * k, wc = fam.n + 2 * k + 1;
      J(r + 0, zc) = Pz.eval(z, w);
      J(r + 0, wc) = Pw.eval(z, w);
      J(r + 1, zc) = Pzw.eval(z, w);
      J(r + 1, wc) = Pww.eval(z, w);
      J(r + 2, zc) = Pzz.eval(z, w);
      J(r + 2, wc) = Pzw.eval(z, w);
      r += 3;
    }

    resid = Fv.cwiseAbs().maxCoeff() / scale;
    if (resid < 1e-11) break;
    Eigen::VectorXcd delta = J.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(Fv);
    for (int i = 0; i < fam.n; ++i) s[static_cast<size_t>(i)] -= delta(i);
    for (int k = 0; k < nu; ++k) {
      zs[static_cast<size_t>(k)] -= delta(fam.n + 2 * k);
      ws[static_cast<size_t>(k)] -= delta(fam.n + 2 * k + 1);
    }
  }
  if (resid >= 1e-11) {
    Error e(ErrKind::SmoothingFailure, "node smoothing Newton did not converge");
    e.with_residual(resid);
    throw e;
  }

  FamilyPoint out = family_point(fam, s);
  FiberReport check = fiber_analyze(fam, out);
  if (check.nu != K) {
    Error e(ErrKind::SmoothingFailure,
            "smoothed fiber has " + std::to_string(check.nu) + " nodes, expected " + std::to_string(K));
    e.with_residual(resid);
    throw e;
  }
  return out;
}

}  // namespace curvedef
