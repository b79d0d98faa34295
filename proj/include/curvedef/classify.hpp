#pragma once

#include <string>
#include <vector>

#include "curvedef/roots.hpp"

namespace curvedef {

struct NodePoint {
  Cplx z{0, 0}, w{0, 0};
};

struct BranchPointInfo {
  Cplx z{0, 0};
  int index = 1;  // contribution to the total branching order (disc multiplicity)
};

enum class FiberClass { NodalGeneric, StratumBoundary, Degenerate };

inline const char* to_string(FiberClass c) {
  switch (c) {
    case FiberClass::NodalGeneric: return "nodal-generic";
    case FiberClass::StratumBoundary: return "stratum-boundary";
    case FiberClass::Degenerate: return "degenerate";
  }
  return "?";
}

struct DegenerateCluster {
  Cplx z{0, 0};
  int disc_multiplicity = 0;
  std::vector<Cplx> w_cluster;
  std::string reason;
};

/// Classified singular data of one fiber curve: nodes, branch points with
/// branching indices, the monic branch-divisor polynomial and its symmetric
/// functions, and the Euler characteristic of the normalization.
struct FiberReport {
  int d = 0;  // sheet count of the projection
  std::vector<NodePoint> nodes;
  std::vector<BranchPointInfo> branch_points;
  int nu = 0;
  CPoly D_nu{Cplx{1, 0}};       // monic; roots = non-node branch points with index
  std::vector<Cplx> sigma;      // elementary symmetric functions of the branch divisor
  int chi = 0;                  // chi = d - sum of branching indices
  FiberClass classification = FiberClass::NodalGeneric;
  std::vector<DegenerateCluster> degenerate;
  std::vector<Cplx> disc_roots;
  std::vector<int> disc_mults;

  int branching_order_at(Cplx z0, double tol = 1e-6) const {
    int k = 0;
    for (const auto& bp : branch_points)
      if (std::abs(bp.z - z0) < tol) k += bp.index;
    return k;
  }
};

struct ClassifyOptions {
  double cluster_radius = 1e-7;     // discriminant-root clustering
  double w_cluster_radius = 1e-3;   // fiber-root clustering after z-refinement
  double vanish_tol = 1e-8;         // relative threshold for "first partials vanish"
  double hessian_floor = 1e-8;      // nondegeneracy floor, relative to coefficient scale
  double disc_radius = 1.0;         // classify discriminant roots with |z| below this
  double event_merge_radius = 1e-6;  // identical critical points found twice
  double assign_radius = 5e-3;      // discriminant root must sit this close to its event
  double event_sep = 1e-5;          // closer events stop being nodal-generic
  double disc_vanish_tol = 1e-11;   // node z-projections must be discriminant roots
  int newton_iters = 50;
};

namespace detail {

struct CritSolve {
  bool converged = false;
  Cplx z{0, 0}, w{0, 0};
  double residual = 0;
};

/// Newton iteration on a 2x2 complex system (F1, F2) = 0.
template <typename Eval1, typename Eval2, typename Jac>
inline CritSolve newton2(Eval1&& f1e, Eval2&& f2e, Jac&& jac, Cplx z0, Cplx w0, int iters,
                         double tol, double wander) {
  CritSolve out;
  Cplx z = z0, w = w0;
  for (int it = 0; it < iters; ++it) {
    Cplx f1 = f1e(z, w), f2 = f2e(z, w);
    double res = std::abs(f1) + std::abs(f2);
    if (res < tol) {
      out.converged = true;
      out.z = z;
      out.w = w;
      out.residual = res;
      return out;
    }
    auto [a, b, c, d] = jac(z, w);
    Cplx det = a * d - b * c;
    if (std::abs(det) < 1e-300) break;
    Cplx dz = (f1 * d - f2 * b) / det;
    Cplx dw = (a * f2 - c * f1) / det;
    z -= dz;
    w -= dw;
    if (std::abs(z - z0) + std::abs(w - w0) > wander) break;
  }
  out.z = z;
  out.w = w;
  out.residual = std::abs(f1e(z, w)) + std::abs(f2e(z, w));
  out.converged = out.residual < tol;
  return out;
}

struct Jet2 {
  const CBiPoly &P, &Pw, &Pz, &Pzw, &Pww, &Pzz;
};

/// Node solver: Newton on (dP/dz, dP/dw) = 0 (nonsingular Jacobian at a
/// node), then require |P| to vanish there.
inline CritSolve solve_node(const Jet2& J, Cplx z0, Cplx w0, int iters, double tol, double wander) {
  return newton2([&](Cplx z, Cplx w) { return J.Pz.eval(z, w); },
                 [&](Cplx z, Cplx w) { return J.Pw.eval(z, w); },
                 [&](Cplx z, Cplx w) {
                   return std::array<Cplx, 4>{J.Pzz.eval(z, w), J.Pzw.eval(z, w),
                                              J.Pzw.eval(z, w), J.Pww.eval(z, w)};
                 },
                 z0, w0, iters, tol, wander);
}

/// Fold solver: Newton on (P, dP/dw) = 0 (nonsingular at a simple
/// vertical-tangency point).
inline CritSolve solve_fold(const Jet2& J, Cplx z0, Cplx w0, int iters, double tol, double wander) {
  return newton2([&](Cplx z, Cplx w) { return J.P.eval(z, w); },
                 [&](Cplx z, Cplx w) { return J.Pw.eval(z, w); },
                 [&](Cplx z, Cplx w) {
                   return std::array<Cplx, 4>{J.Pz.eval(z, w), J.Pw.eval(z, w),
                                              J.Pzw.eval(z, w), J.Pww.eval(z, w)};
                 },
                 z0, w0, iters, tol, wander);
}

/// Refine an m-fold root of p: Newton on the (m-1)-th derivative.
inline Cplx refine_multiple_root(const CPoly& p, Cplx z0, int mult, double guard) {
  CPoly q = p;
  for (int k = 1; k < mult; ++k) q = cderiv(q);
  CPoly dq = cderiv(q);
  Cplx z = z0;
  for (int it = 0; it < 40; ++it) {
    Cplx f = ceval(q, z), df = ceval(dq, z);
    if (std::abs(df) < 1e-300) break;
    Cplx step = f / df;
    z -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
  }
  if (std::abs(z - z0) > guard) return z0;  // refinement wandered off: keep the cluster center
  return z;
}

}  // namespace detail

/// Classify the singular data of a monic-in-w fiber curve inside the disc
/// |z| < disc_radius: cluster the discriminant roots, refine each cluster
/// center, solve P = dP/dw = 0 near every multiple fiber root, and sort each
/// critical point into node versus branching (with index). Unresolvable
/// clusters are reported as degenerate with the cluster attached.
inline FiberReport classify_curve(const CBiPoly& P, const ClassifyOptions& opt = {}) {
  require(!P.wc.empty() && cdegree(P.wc.back()) == 0 && std::abs(P.wc.back()[0]) > 1e-300,
          ErrKind::InvalidInput, "classify_curve needs a polynomial monic in w");
  FiberReport rep;
  rep.d = P.degree_w();
  double scale = P.norm1();

  CBiPoly Pw = P.deriv_w(), Pz = P.deriv_z();
  CBiPoly Pzw = Pz.deriv_w(), Pww = Pw.deriv_w(), Pzz = Pz.deriv_z();

  if (rep.d < 2) {
    rep.chi = rep.d;
    return rep;
  }
  CPoly disc = cdiscriminant_w(P);
  if (cdegree(disc) < 1) {
    rep.chi = rep.d;
    return rep;
  }

  RootSet rs = roots(disc, opt.cluster_radius);
  detail::Jet2 jet{P, Pw, Pz, Pzw, Pww, Pzz};
  const double newton_tol = 1e-11 * std::max(1.0, scale);

  struct FoldEvent {
    Cplx z, w;
    int index;
  };
  std::vector<NodePoint> nodes;
  std::vector<FoldEvent> folds;
  auto push_node = [&](Cplx z, Cplx w) {
    for (const auto& n : nodes)
      if (std::abs(n.z - z) + std::abs(n.w - w) < opt.event_merge_radius * (1.0 + std::abs(z))) return;
    nodes.push_back({z, w});
  };
  auto push_fold = [&](Cplx z, Cplx w, int index) {
    for (auto& f : folds)
      if (std::abs(f.z - z) + std::abs(f.w - w) < opt.event_merge_radius * (1.0 + std::abs(z))) {
        f.index = std::max(f.index, index);
        return;
      }
    folds.push_back({z, w, index});
  };

  int total_disc_order = 0;
  for (size_t ci = 0; ci < rs.points.size(); ++ci) {
    Cplx z0 = rs.points[ci];
    int mult = rs.multiplicities[ci];
    if (std::abs(z0) >= opt.disc_radius) continue;
    rep.disc_roots.push_back(z0);
    rep.disc_mults.push_back(mult);
    total_disc_order += mult;

    // a solve may not wander across the whole disc
    double wander = 0.5 * (1.0 + std::abs(z0));

    Cplx z_ref = mult >= 2 ? detail::refine_multiple_root(disc, z0, mult, 1e3 * opt.cluster_radius) : z0;

    // fiber w-roots over the refined center, clustered
    RootSet fr = roots(P.fiber(z_ref), opt.w_cluster_radius);
    bool any = false;
    for (size_t wi = 0; wi < fr.points.size(); ++wi) {
      if (fr.multiplicities[wi] < 2) continue;
      int m = fr.multiplicities[wi];
      any = true;
      // node first: (P_z, P_w) = 0 with P vanishing and nondegenerate Hessian.
      // P itself has critical points off the curve whose critical values can
      // be tiny; a genuine node additionally projects onto a discriminant root.
      auto nd = detail::solve_node(jet, z_ref, fr.points[wi], opt.newton_iters, newton_tol, wander);
      double disc_scale = cnorm1(disc) + 1e-300;
      if (nd.converged && std::abs(P.eval(nd.z, nd.w)) <= opt.vanish_tol * std::max(1.0, scale) &&
          std::abs(ceval(disc, nd.z)) <= opt.disc_vanish_tol * disc_scale) {
        Cplx hess = Pzz.eval(nd.z, nd.w) * Pww.eval(nd.z, nd.w) -
                    Pzw.eval(nd.z, nd.w) * Pzw.eval(nd.z, nd.w);
        if (std::abs(hess) > opt.hessian_floor * std::max(1.0, scale * scale)) {
          push_node(nd.z, nd.w);
          continue;
        }
      }
      // otherwise a vertical tangency: (P, P_w) = 0 with P_z away from zero
      auto fd = detail::solve_fold(jet, z_ref, fr.points[wi], opt.newton_iters, newton_tol, wander);
      if (fd.converged) {
        double pz_abs = std::abs(Pz.eval(fd.z, fd.w));
        if (pz_abs > opt.vanish_tol * std::max(1.0, scale)) {
          push_fold(fd.z, fd.w, m - 1);
          continue;
        }
        rep.degenerate.push_back({z0, mult, {fr.points[wi]}, "degenerate-hessian"});
        continue;
      }
      rep.degenerate.push_back({z0, mult, {fr.points[wi]}, "newton-failure"});
    }
    if (!any) rep.degenerate.push_back({z0, mult, {}, "no-critical-fiber-root"});
  }

  rep.nodes = nodes;
  for (const auto& f : folds) rep.branch_points.push_back({f.z, f.index});

  // multiset identity: every discriminant root in the window belongs to a
  // node (twice) or to a branch point (its index); verified by matching each
  // cluster to the nearest event and comparing counts.
  if (rep.degenerate.empty()) {
    int expected = 0;
    for (const auto& f : folds) expected += f.index;
    expected += 2 * static_cast<int>(nodes.size());
    bool ok = expected == total_disc_order;
    for (size_t ci = 0; ci < rep.disc_roots.size() && ok; ++ci) {
      double best = 1e300;
      for (const auto& n : nodes) best = std::min(best, std::abs(rep.disc_roots[ci] - n.z));
      for (const auto& f : folds) best = std::min(best, std::abs(rep.disc_roots[ci] - f.z));
      if (best > opt.assign_radius * (1.0 + std::abs(rep.disc_roots[ci]))) ok = false;
    }
    if (!ok) rep.degenerate.push_back({Cplx{0, 0}, total_disc_order, {}, "multiplicity-budget-mismatch"});
  }

  rep.nu = static_cast<int>(rep.nodes.size());
  int total_branching = 0;
  rep.D_nu = CPoly{Cplx{1, 0}};
  for (const auto& bp : rep.branch_points) {
    total_branching += bp.index;
    for (int k = 0; k < bp.index; ++k) rep.D_nu = cmul(rep.D_nu, CPoly{-bp.z, {1, 0}});
  }
  rep.chi = rep.d - total_branching;
  // sigma_i = (-1)^i * coefficient of z^{m-i}
  int m = cdegree(rep.D_nu);
  rep.sigma.assign(static_cast<size_t>(std::max(m, 0)), Cplx{0, 0});
  for (int i = 1; i <= m; ++i) {
    Cplx c = rep.D_nu[static_cast<size_t>(m - i)];
    rep.sigma[static_cast<size_t>(i - 1)] = (i % 2 == 0) ? c : -c;
  }

  if (!rep.degenerate.empty()) {
    rep.classification = FiberClass::Degenerate;
    return rep;
  }
  bool generic = true;
  for (const auto& bp : rep.branch_points)
    if (bp.index != 1) generic = false;
  // events must be cleanly separated in z
  auto too_close = [&](Cplx a, Cplx b) {
    return std::abs(a - b) < opt.event_sep * (1.0 + std::abs(a));
  };
  for (size_t i = 0; i < nodes.size() && generic; ++i) {
    for (size_t j = i + 1; j < nodes.size(); ++j)
      if (too_close(nodes[i].z, nodes[j].z)) generic = false;
    for (const auto& f : folds)
      if (too_close(nodes[i].z, f.z)) generic = false;
  }
  for (size_t i = 0; i < folds.size() && generic; ++i)
    for (size_t j = i + 1; j < folds.size(); ++j)
      if (too_close(folds[i].z, folds[j].z)) generic = false;
  rep.classification = generic ? FiberClass::NodalGeneric : FiberClass::StratumBoundary;
  return rep;
}

/// Classify an exactly represented curve whose singular structure may sit at
/// a microscopic scale. The discriminant of such a curve in its original
/// coordinates loses every significant digit to cancellation, so the curve is
/// recentered and rescaled by exact rational affine substitutions until the
/// discriminant-root cloud has unit spread, and only the final well-scaled
/// polynomial is classified in floating point. Positions are reported in the
/// original coordinates.
inline FiberReport classify_exact_local(const BiPoly& Fx, ClassifyOptions opt = {}) {
  require(Fx.is_monic_in_w(), ErrKind::InvalidInput, "classify_exact_local needs a monic curve");
  const int d = Fx.degree_w();
  GaussRat c(0), s(1), t(1);
  BiPoly cur = Fx;

  auto rebuild = [&]() {
    BiPoly sub = Fx.substitute(BiPoly(c) + s * BiPoly::z(), BiPoly::w());
    auto rows = sub.w_coeffs();
    for (size_t j = 0; j < rows.size(); ++j) {
      GaussRat f(1);
      for (size_t k = j; k + 1 < rows.size(); ++k) f *= t;  // t^(d-j)
      rows[j] = f.inv() * rows[j];
    }
    cur = BiPoly::from_w_coeffs(rows);
  };

  for (int pass = 0; pass < 5; ++pass) {
    CBiPoly Fd = CBiPoly::from_exact(cur);
    if (d < 2) break;
    CPoly disc = cdiscriminant_w(Fd);
    if (cdegree(disc) < 1) break;
    RootSet rs = roots(disc, opt.cluster_radius);
    if (rs.points.size() <= 1) break;  // one event location: scales are fine
    Cplx centroid{0, 0};
    for (size_t i = 0; i < rs.points.size(); ++i)
      centroid += rs.points[i] * static_cast<double>(rs.multiplicities[i]);
    centroid /= static_cast<double>(rs.total());
    double spread = 0;
    for (const auto& r : rs.points) spread = std::max(spread, std::abs(r - centroid));
    if (spread > 0.05 && spread < 5.0) break;  // cloud already at unit scale
    spread = std::max(spread, 1e-9) * 1.3;

    c += s * rationalize(centroid);
    s *= GaussRat(rationalize(spread, 60));
    rebuild();

    // rescale w to the fiber-root magnitude near the cloud
    CBiPoly Fl = CBiPoly::from_exact(cur);
    double swmax = 1e-12;
    for (int samp = 0; samp < 4; ++samp) {
      double a = 2.0 * M_PI * samp / 4.0;
      try {
        auto rr = raw_roots(Fl.fiber(1.2 * Cplx{std::cos(a), std::sin(a)}));
        for (auto& r : rr) swmax = std::max(swmax, std::abs(r));
      } catch (const Error&) {
      }
    }
    if (swmax > 1e-11) {
      t *= GaussRat(rationalize(swmax, 60));
      rebuild();
    }
  }

  ClassifyOptions local = opt;
  local.disc_radius = 4.0;
  FiberReport rep = classify_curve(CBiPoly::from_exact(cur), local);

  // map positions back to the original coordinates
  Cplx cc = c.to_complex(), sc = s.to_complex(), tc = t.to_complex();
  auto back_z = [&](Cplx zt) { return cc + sc * zt; };
  for (auto& nd : rep.nodes) {
    nd.z = back_z(nd.z);
    nd.w *= tc;
  }
  for (auto& bp : rep.branch_points) bp.z = back_z(bp.z);
  for (auto& dg : rep.degenerate) dg.z = back_z(dg.z);
  for (auto& zr : rep.disc_roots) zr = back_z(zr);
  rep.D_nu = CPoly{Cplx{1, 0}};
  for (const auto& bp : rep.branch_points)
    for (int k = 0; k < bp.index; ++k) rep.D_nu = cmul(rep.D_nu, CPoly{-bp.z, {1, 0}});
  int m = cdegree(rep.D_nu);
  rep.sigma.assign(static_cast<size_t>(std::max(m, 0)), Cplx{0, 0});
  for (int i = 1; i <= m; ++i) {
    Cplx coeff = rep.D_nu[static_cast<size_t>(m - i)];
    rep.sigma[static_cast<size_t>(i - 1)] = (i % 2 == 0) ? coeff : -coeff;
  }
  return rep;
}

}  // namespace curvedef
