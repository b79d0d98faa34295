#pragma once

#include <Eigen/Dense>

#include <sstream>
#include <string>
#include <vector>

#include "curvedef/hurwitz.hpp"
#include "curvedef/versal.hpp"

namespace curvedef {

struct DegenOptions {
  double stratum_tol = 1e-9;   // vanishing tolerance on the driven coefficients
  double newton_tol = 1e-10;   // corrector tolerance
  double step_min = 1e-6;
  double step_max = 1e-1;
  int retries = 8;             // random restarts per stage
  double axis_eps = 5e-3;      // a node this close to z = 0 is an axis event
  double collide_eps = 1e-3;   // two off-axis branch points this close collide
  double hessian_floor = 1e-8; // node nondegeneracy monitor
};

/// A point of the stratum walk: nu nodes held off the axis while the branch
/// divisor polynomial is divisible by z^k.
struct StratumState {
  FamilyPoint pt;
  int nu = 0;
  int k = 0;
  std::vector<NodePoint> node_locations;
  std::vector<std::string> history;
  std::string last_event;       // "", "node-on-axis", "vertical-on-axis", "bp-collision"
  Cplx event_where{0, 0};
  std::vector<std::vector<Cplx>> bp_trajectory;  // accepted-step branch points (plots)
};

namespace detail {

/// Fiber discriminant as a z-polynomial together with its s-gradient,
/// computed per interpolation sample from the Sylvester determinant and the
/// trace identity d(det M) = det M * tr(M^{-1} dM).
struct DiscWithGrad {
  CPoly disc;
  std::vector<CPoly> grad;
};

inline DiscWithGrad disc_with_grad(const VersalFamily& fam, const std::vector<Cplx>& s) {
  const int d = fam.d;
  CBiPoly P = fam.fiber_poly(s);
  CBiPoly Pw = P.deriv_w();
  int dz = 0;
  dz = std::max(dz, P.degree_z());
  for (const auto& phi : fam.basisf) dz = std::max(dz, phi.degree_z());
  const int bound = (2 * d - 1) * std::max(dz, 1);
  const int M = bound + 1;
  const int size = 2 * d - 1;

  std::vector<Cplx> det_samples(static_cast<size_t>(M));
  std::vector<std::vector<Cplx>> grad_samples(static_cast<size_t>(fam.n),
                                              std::vector<Cplx>(static_cast<size_t>(M)));
  for (int q = 0; q < M; ++q) {
    double ang = 2.0 * M_PI * q / M;
    Cplx z0{std::cos(ang), std::sin(ang)};
    CPoly fc = P.fiber(z0);
    CPoly gc = Pw.fiber(z0);
    fc.resize(static_cast<size_t>(d) + 1, Cplx{0, 0});
    gc.resize(static_cast<size_t>(d), Cplx{0, 0});
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
    for (int r = 0; r < d - 1; ++r)
      for (int kk = 0; kk <= d; ++kk) m(r, r + kk) = fc[static_cast<size_t>(d - kk)];
    for (int r = 0; r < d; ++r)
      for (int kk = 0; kk <= d - 1; ++kk) m(d - 1 + r, r + kk) = gc[static_cast<size_t>(d - 1 - kk)];
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    Cplx detv = lu.determinant();
    det_samples[static_cast<size_t>(q)] = detv;
    for (int i = 0; i < fam.n; ++i) {
      const CBiPoly& phi = fam.basisf[static_cast<size_t>(i)];
      CPoly pc = phi.fiber(z0);
      CPoly pwc = phi.deriv_w().fiber(z0);
      pc.resize(static_cast<size_t>(d) + 1, Cplx{0, 0});
      pwc.resize(static_cast<size_t>(d), Cplx{0, 0});
      Eigen::MatrixXcd dm = Eigen::MatrixXcd::Zero(size, size);
      for (int r = 0; r < d - 1; ++r)
        for (int kk = 0; kk <= d; ++kk) dm(r, r + kk) = pc[static_cast<size_t>(d - kk)];
      for (int r = 0; r < d; ++r)
        for (int kk = 0; kk <= d - 1; ++kk) dm(d - 1 + r, r + kk) = pwc[static_cast<size_t>(d - 1 - kk)];
      grad_samples[static_cast<size_t>(i)][static_cast<size_t>(q)] = detv * lu.solve(dm).trace();
    }
  }
  DiscWithGrad out;
  out.disc = idft_coeffs(det_samples, 1.0);
  out.grad.resize(static_cast<size_t>(fam.n));
  for (int i = 0; i < fam.n; ++i) out.grad[static_cast<size_t>(i)] = idft_coeffs(grad_samples[static_cast<size_t>(i)], 1.0);
  return out;
}

/// Taylor coefficients at 0 of 1/prod_j (z - z_j)^2, to the given length,
/// together with the partial derivative against each z_j.
inline void node_factor_series(const std::vector<Cplx>& zj, int len, CPoly& ninv,
                               std::vector<CPoly>& dninv) {
  ninv.assign(static_cast<size_t>(len), Cplx{0, 0});
  ninv[0] = Cplx{1, 0};
  // N(z) = prod (z - z_j)^2; build N then invert
  CPoly N{Cplx{1, 0}};
  for (Cplx z0 : zj) {
    CPoly lin{-z0, Cplx{1, 0}};
    N = cmul(N, lin);
    N = cmul(N, lin);
  }
  N.resize(static_cast<size_t>(std::max<size_t>(N.size(), 1)), Cplx{0, 0});
  ninv = series::inverse(series::trunc(N, len), len);
  dninv.assign(zj.size(), CPoly(static_cast<size_t>(len), Cplx{0, 0}));
  for (size_t j = 0; j < zj.size(); ++j) {
    // d(N^{-1})/dz_j = N^{-1} * 2/(z - z_j); 2/(z-z_j) = -2 sum z^m / z_j^{m+1}
    CPoly geom(static_cast<size_t>(len), Cplx{0, 0});
    Cplx p = 1.0 / zj[j];
    for (int m = 0; m < len; ++m) {
      geom[static_cast<size_t>(m)] = -2.0 * p;
      p /= zj[j];
    }
    dninv[j] = series::mul(ninv, geom, len);
  }
}

struct StratumSystem {
  Eigen::VectorXcd F;
  Eigen::MatrixXcd J;
  std::vector<Cplx> e;  // Taylor coefficients e_0 .. e_k of disc / node factor
};

/// Residual and Jacobian of the augmented system at (s, nodes):
/// node systems (P = P_w = P_z = 0) plus the first k+1 Taylor coefficients of
/// the branch-divisor polynomial at the origin, the last one driven to target.
inline StratumSystem stratum_system(const VersalFamily& fam, const std::vector<Cplx>& s,
                                    const std::vector<Cplx>& zj, const std::vector<Cplx>& wj,
                                    int k, Cplx target) {
  const int nu = static_cast<int>(zj.size());
  const int n_eq = 3 * nu + k + 1;
  const int n_un = fam.n + 2 * nu;
  StratumSystem sys;
  sys.F = Eigen::VectorXcd::Zero(n_eq);
  sys.J = Eigen::MatrixXcd::Zero(n_eq, n_un);

  CBiPoly P = fam.fiber_poly(s);
  CBiPoly Pw = P.deriv_w(), Pz = P.deriv_z();
  CBiPoly Pzz = Pz.deriv_z(), Pzw = Pz.deriv_w(), Pww = Pw.deriv_w();

  int r = 0;
  for (int j = 0; j < nu; ++j) {
    Cplx z = zj[static_cast<size_t>(j)], w = wj[static_cast<size_t>(j)];
    sys.F(r + 0) = P.eval(z, w);
    sys.F(r + 1) = Pw.eval(z, w);
    sys.F(r + 2) = Pz.eval(z, w);
    for (int i = 0; i < fam.n; ++i) {
      const CBiPoly& phi = fam.basisf[static_cast<size_t>(i)];
      sys.J(r + 0, i) = phi.eval(z, w);
      sys.J(r + 1, i) = phi.deriv_w().eval(z, w);
      sys.J(r + 2, i) = phi.deriv_z().eval(z, w);
    }
    int zc = fam.n + 2 * j, wc = fam.n + 2 * j + 1;
    sys.J(r + 0, zc) = Pz.eval(z, w);
    sys.J(r + 0, wc) = Pw.eval(z, w);
    sys.J(r + 1, zc) = Pzw.eval(z, w);
    sys.J(r + 1, wc) = Pww.eval(z, w);
    sys.J(r + 2, zc) = Pzz.eval(z, w);
    sys.J(r + 2, wc) = Pzw.eval(z, w);
    r += 3;
  }

  const int len = k + 1;
  DiscWithGrad dg = disc_with_grad(fam, s);
  CPoly ninv;
  std::vector<CPoly> dninv;
  node_factor_series(zj, len, ninv, dninv);
  CPoly discs = series::trunc(dg.disc, len);
  CPoly e = series::mul(discs, ninv, len);
  e.resize(static_cast<size_t>(len), Cplx{0, 0});
  sys.e.assign(e.begin(), e.end());
  for (int i = 0; i <= k; ++i) {
    sys.F(r + i) = e[static_cast<size_t>(i)];
    if (i == k) sys.F(r + i) -= target;
    for (int c = 0; c < fam.n; ++c) {
      CPoly gi = series::mul(series::trunc(dg.grad[static_cast<size_t>(c)], len), ninv, len);
      if (i < static_cast<int>(gi.size())) sys.J(r + i, c) = gi[static_cast<size_t>(i)];
    }
    for (int j = 0; j < nu; ++j) {
      CPoly gj = series::mul(discs, dninv[static_cast<size_t>(j)], len);
      if (i < static_cast<int>(gj.size())) sys.J(r + i, fam.n + 2 * j) = gj[static_cast<size_t>(i)];
    }
  }
  return sys;
}

/// Newton corrector at a fixed continuation target. Returns the final
/// residual; updates (s, zj, wj) in place when converged.
inline double stratum_correct(const VersalFamily& fam, std::vector<Cplx>& s, std::vector<Cplx>& zj,
                              std::vector<Cplx>& wj, int k, Cplx target, const DegenOptions& opt) {
  std::vector<Cplx> s0 = s, z0 = zj, w0 = wj;
  double resid = 1e300;
  for (int iter = 0; iter < 30; ++iter) {
    StratumSystem sys = stratum_system(fam, s, zj, wj, k, target);
    resid = sys.F.cwiseAbs().maxCoeff();
    if (resid < opt.newton_tol) return resid;
    Eigen::VectorXcd delta = sys.J.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(sys.F);
    for (int i = 0; i < fam.n; ++i) s[static_cast<size_t>(i)] -= delta(i);
    for (size_t j = 0; j < zj.size(); ++j) {
      zj[j] -= delta(fam.n + 2 * static_cast<int>(j));
      wj[j] -= delta(fam.n + 2 * static_cast<int>(j) + 1);
    }
  }
  if (resid >= opt.newton_tol) {
    s = s0;
    zj = z0;
    wj = w0;
  }
  return resid;
}

/// Branch points of the current fiber away from the tracked nodes.
inline std::vector<Cplx> current_branch_points(const VersalFamily& fam, const std::vector<Cplx>& s,
                                               const std::vector<Cplx>& zj) {
  CBiPoly P = fam.fiber_poly(s);
  CPoly disc = cdiscriminant_w(P);
  if (cdegree(disc) < 1) return {};
  RootSet rs = roots(disc, 1e-7);
  std::vector<Cplx> out;
  for (size_t i = 0; i < rs.points.size(); ++i) {
    if (std::abs(rs.points[i]) > 1.0) continue;
    bool is_node = false;
    for (Cplx z0 : zj)
      if (std::abs(rs.points[i] - z0) < 1e-5) is_node = true;
    if (!is_node)
      for (int c = 0; c < rs.multiplicities[i]; ++c) out.push_back(rs.points[i]);
  }
  return out;
}

}  // namespace detail

/// Validate a family point as a stratum state: nu nodes off the axis, the
/// branch divisor divisible by z^k within tolerance.
inline StratumState make_stratum_state(const VersalFamily& fam, const FamilyPoint& pt,
                                       const DegenOptions& opt = {}) {
  FiberReport rep = fiber_analyze(fam, pt);
  require(rep.classification != FiberClass::Degenerate, ErrKind::InvalidInput,
          "degenerate fiber cannot seed a stratum walk");
  StratumState st;
  st.pt = pt;
  st.nu = rep.nu;
  st.node_locations = rep.nodes;
  st.k = rep.branching_order_at({0, 0}, opt.axis_eps);
  st.history.push_back("seed: nu=" + std::to_string(st.nu) + " k=" + std::to_string(st.k));
  return st;
}

/// Drive the next Taylor coefficient of the branch divisor at the origin to
/// zero along (1 - t) * c_k, holding the nu node systems and the lower
/// coefficients. Monitors: off-axis branch points colliding (bp-collision), a
/// node drifting to the axis (node-on-axis via its own position), and the
/// structure at the axis after arrival (node / vertical pair).
inline StratumState enter_stratum(const VersalFamily& fam, const StratumState& state,
                                  const DegenOptions& opt = {}) {
  const int k = state.k;
  require(k + 1 <= fam.n - 2 * state.nu, ErrKind::InvalidInput,
          "stratum order cannot exceed the branch divisor degree");

  std::vector<Cplx> s = state.pt.s;
  std::vector<Cplx> zj, wj;
  for (const auto& nd : state.node_locations) {
    zj.push_back(nd.z);
    wj.push_back(nd.w);
  }

  StratumState out = state;
  out.bp_trajectory.clear();

  // starting coefficient value
  Cplx ek0;
  {
    detail::StratumSystem sys = detail::stratum_system(fam, s, zj, wj, k, Cplx{0, 0});
    ek0 = sys.e.back();
  }
  if (std::abs(ek0) < opt.stratum_tol) {
    out.k = k + 1;
    out.history.push_back("coefficient already vanishing; k -> " + std::to_string(out.k));
    return out;
  }

  double t = 0.0, dt = opt.step_max;
  CBiPoly fiber = fam.fiber_poly(s);
  while (t < 1.0) {
    double t2 = std::min(1.0, t + dt);
    std::vector<Cplx> s_try = s, zj_try = zj, wj_try = wj;
    double resid = detail::stratum_correct(fam, s_try, zj_try, wj_try, k,
                                           (1.0 - t2) * ek0, opt);
    bool ok = resid < opt.newton_tol;
    if (ok) {
      // node nondegeneracy monitor
      CBiPoly P = fam.fiber_poly(s_try);
      CBiPoly Pz = P.deriv_z(), Pw = P.deriv_w();
      CBiPoly Pzz = Pz.deriv_z(), Pzw = Pz.deriv_w(), Pww = Pw.deriv_w();
      double scale = std::max(1.0, P.norm1());
      for (size_t j = 0; j < zj_try.size() && ok; ++j) {
        Cplx h = Pzz.eval(zj_try[j], wj_try[j]) * Pww.eval(zj_try[j], wj_try[j]) -
                 Pzw.eval(zj_try[j], wj_try[j]) * Pzw.eval(zj_try[j], wj_try[j]);
        if (std::abs(h) < opt.hessian_floor * scale * scale) ok = false;
      }
    }
    if (!ok) {
      dt *= 0.5;
      if (dt < opt.step_min) {
        Error e(ErrKind::TrackingFailure, "step size underflow while driving the stratum coefficient");
        e.with_residual(dt);
        throw e;
      }
      continue;
    }
    s = s_try;
    zj = zj_try;
    wj = wj_try;
    t = t2;
    dt = std::min(opt.step_max, dt * 1.7);

    // events
    for (size_t j = 0; j < zj.size(); ++j)
      if (std::abs(zj[j]) < opt.axis_eps) {
        out.pt = family_point(fam, s);
        out.node_locations.clear();
        for (size_t q = 0; q < zj.size(); ++q) out.node_locations.push_back({zj[q], wj[q]});
        out.last_event = "node-on-axis";
        out.event_where = zj[j];
        out.history.push_back("node drifted to the axis during the drive");
        return out;
      }
    std::vector<Cplx> bps = detail::current_branch_points(fam, s, zj);
    out.bp_trajectory.push_back(bps);
    for (size_t a = 0; a < bps.size(); ++a)
      for (size_t b = a + 1; b < bps.size(); ++b) {
        if (std::abs(bps[a]) < 2 * opt.axis_eps || std::abs(bps[b]) < 2 * opt.axis_eps) continue;
        if (std::abs(bps[a] - bps[b]) < opt.collide_eps) {
          out.pt = family_point(fam, s);
          out.node_locations.clear();
          for (size_t q = 0; q < zj.size(); ++q) out.node_locations.push_back({zj[q], wj[q]});
          out.last_event = "bp-collision";
          out.event_where = 0.5 * (bps[a] + bps[b]);
          out.history.push_back("two off-axis branch points collided during the drive");
          return out;
        }
      }
  }

  out.pt = family_point(fam, s);
  out.node_locations.clear();
  for (size_t q = 0; q < zj.size(); ++q) out.node_locations.push_back({zj[q], wj[q]});
  out.k = k + 1;

  // inspect the structure at the axis after arrival
  FiberReport rep = fiber_analyze(fam, out.pt);
  for (const auto& nd : rep.nodes) {
    bool tracked = false;
    for (Cplx z0 : zj)
      if (std::abs(nd.z - z0) < 1e-4) tracked = true;
    if (!tracked && std::abs(nd.z) < 10 * opt.axis_eps) {
      out.last_event = "node-on-axis";
      out.event_where = nd.z;
      out.history.push_back("node formed on the axis at k=" + std::to_string(out.k));
      return out;
    }
  }
  for (const auto& dg : rep.degenerate) {
    if (std::abs(dg.z) < 10 * opt.axis_eps) {
      out.last_event = "vertical-on-axis";
      out.event_where = dg.z;
      out.history.push_back("degenerate vertical structure on the axis at k=" + std::to_string(out.k));
      return out;
    }
  }
  out.last_event.clear();
  out.history.push_back("reached stratum order k=" + std::to_string(out.k));
  return out;
}

/// From a terminal stratum state (node or vertical pair on the axis, or a
/// branch-point collision), produce a validated member with one extra node:
/// solve the nu+1 node systems with free locations (the new one seeded at the
/// event), then nudge off the boundary stratum until the fiber is
/// nodal-generic again.
inline FamilyPoint harvest_node(const VersalFamily& fam, const StratumState& state,
                                const DegenOptions& opt = {}) {
  require(!state.last_event.empty(), ErrKind::NotAtTerminalStratum,
          "state does not carry a harvestable event");
  const int nu = state.nu;

  // seed for the new node
  Cplx seed_z = state.event_where;
  Cplx seed_w{0, 0};
  {
    FiberReport rep = fiber_analyze(fam, state.pt);
    double best = 1e300;
    for (const auto& nd : rep.nodes) {
      bool tracked = false;
      for (const auto& t : state.node_locations)
        if (std::abs(nd.z - t.z) + std::abs(nd.w - t.w) < 1e-4) tracked = true;
      if (!tracked && std::abs(nd.z - seed_z) < best) {
        best = std::abs(nd.z - seed_z);
        seed_z = nd.z;
        seed_w = nd.w;
      }
    }
    if (best > 1e200) {
      // no ready-made node: take the critical fiber point nearest the event
      CPoly f = state.pt.fiber.fiber(seed_z);
      RootSet fr = roots(f, 1e-3);
      double bw = 1e300;
      for (size_t i = 0; i < fr.points.size(); ++i)
        if (fr.multiplicities[i] >= 2 && std::abs(fr.points[i]) < bw) {
          bw = std::abs(fr.points[i]);
          seed_w = fr.points[i];
        }
    }
  }

  auto rng = make_rng(0x68727673);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int attempt = 0; attempt < opt.retries; ++attempt) {
    std::vector<Cplx> s = state.pt.s;
    std::vector<Cplx> zj, wj;
    for (const auto& nd : state.node_locations) {
      zj.push_back(nd.z);
      wj.push_back(nd.w);
    }
    zj.push_back(seed_z);
    wj.push_back(seed_w);
    if (attempt > 0) {
      // random nudge: move the new node off the axis before resolving
      double kick = 2e-3 * attempt;
      zj.back() += kick * Cplx{u(rng), u(rng)};
      wj.back() += kick * Cplx{u(rng), u(rng)};
      for (size_t i = 0; i < s.size(); ++i) s[i] += 0.5 * kick * Cplx{u(rng), u(rng)};
    }

    // Newton on the nu+1 node systems, minimal-norm in (s, positions)
    double resid = 1e300;
    for (int iter = 0; iter < 60; ++iter) {
      CBiPoly P = fam.fiber_poly(s);
      CBiPoly Pw = P.deriv_w(), Pz = P.deriv_z();
      CBiPoly Pzz = Pz.deriv_z(), Pzw = Pz.deriv_w(), Pww = Pw.deriv_w();
      const int m = nu + 1;
      Eigen::VectorXcd F(3 * m);
      Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(3 * m, fam.n + 2 * m);
      for (int j = 0; j < m; ++j) {
        Cplx z = zj[static_cast<size_t>(j)], w = wj[static_cast<size_t>(j)];
        F(3 * j + 0) = P.eval(z, w);
        F(3 * j + 1) = Pw.eval(z, w);
        F(3 * j + 2) = Pz.eval(z, w);
        for (int i = 0; i < fam.n; ++i) {
          const CBiPoly& phi = fam.basisf[static_cast<size_t>(i)];
          J(3 * j + 0, i) = phi.eval(z, w);
          J(3 * j + 1, i) = phi.deriv_w().eval(z, w);
          J(3 * j + 2, i) = phi.deriv_z().eval(z, w);
        }
        int zc = fam.n + 2 * j, wc = fam.n + 2 * j + 1;
        J(3 * j + 0, zc) = Pz.eval(z, w);
        J(3 * j + 0, wc) = Pw.eval(z, w);
        J(3 * j + 1, zc) = Pzw.eval(z, w);
        J(3 * j + 1, wc) = Pww.eval(z, w);
        J(3 * j + 2, zc) = Pzz.eval(z, w);
        J(3 * j + 2, wc) = Pzw.eval(z, w);
      }
      resid = F.cwiseAbs().maxCoeff();
      if (resid < opt.newton_tol) break;
      Eigen::VectorXcd delta = J.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(F);
      for (int i = 0; i < fam.n; ++i) s[static_cast<size_t>(i)] -= delta(i);
      for (int j = 0; j < m; ++j) {
        zj[static_cast<size_t>(j)] -= delta(fam.n + 2 * j);
        wj[static_cast<size_t>(j)] -= delta(fam.n + 2 * j + 1);
      }
    }
    if (resid >= opt.newton_tol) continue;

    FamilyPoint cand = family_point(fam, s);
    FiberReport rep = fiber_analyze(fam, cand);
    if (rep.nu == nu + 1 && rep.classification == FiberClass::NodalGeneric) return cand;
    // resolved but still on a boundary stratum: keep nudging
  }
  fail(ErrKind::ConstructionFailure, "could not resolve the extra node off the boundary stratum");
}

/// One stage of the verification walk.
struct CertStage {
  std::string type;  // max-nodal | smooth | stratum | harvest
  std::vector<Cplx> s;
  int nu = 0;
  int k = 0;
  double residual = 0.0;
  std::vector<std::string> events;
  int chi = 0;
  std::vector<Cplx> branch_points;
  std::vector<NodePoint> nodes;
  std::vector<std::vector<Cplx>> bp_trajectory;
};

struct Certificate {
  std::string germ;
  int nu_start = 0;
  int delta = 0;
  bool success = false;
  std::string failure_stage;
  std::vector<CertStage> stages;
};

namespace detail {

inline CertStage stage_from_point(const VersalFamily& fam, const FamilyPoint& pt,
                                  const std::string& type, int k) {
  FiberReport rep = fiber_analyze(fam, pt);
  CertStage st;
  st.type = type;
  st.s = pt.s;
  st.nu = rep.nu;
  st.k = k;
  st.chi = rep.chi;
  for (const auto& bp : rep.branch_points)
    for (int c = 0; c < bp.index; ++c) st.branch_points.push_back(bp.z);
  st.nodes = rep.nodes;
  return st;
}

}  // namespace detail

/// Numerical walk proving the degeneration chain: from a nu-nodal member,
/// repeatedly drive the branch divisor into deeper strata until a node (or a
/// vertical pair) appears on the axis, harvest it, and recurse until nu
/// reaches delta. The certificate records every visited member.
inline Certificate verify_main_theorem(const VersalFamily& fam, const SingularityReport& report,
                                       int nu_start, const DegenOptions& opt = {}) {
  require(nu_start >= 0 && nu_start < report.delta, ErrKind::InvalidInput,
          "nu_start must lie strictly below delta");
  Certificate cert;
  cert.nu_start = nu_start;
  cert.delta = report.delta;

  std::string failure;
  for (int attempt = 0; attempt < opt.retries; ++attempt) {
    cert.stages.clear();
    cert.success = false;
    try {
      FamilyPoint maximal = max_nodal_member(fam, report);
      cert.stages.push_back(detail::stage_from_point(fam, maximal, "max-nodal", 0));

      FamilyPoint current = maximal;
      if (nu_start < report.delta) {
        std::vector<int> keep;
        for (int i = 0; i < nu_start; ++i) keep.push_back((i + attempt) % report.delta);
        std::sort(keep.begin(), keep.end());
        keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
        while (static_cast<int>(keep.size()) < nu_start)
          for (int i = 0; i < report.delta && static_cast<int>(keep.size()) < nu_start; ++i)
            if (std::find(keep.begin(), keep.end(), i) == keep.end()) keep.push_back(i);
        current = smooth_nodes(fam, maximal, keep);
        cert.stages.push_back(detail::stage_from_point(fam, current, "smooth", 0));
      }

      int nu = nu_start;
      while (nu < report.delta) {
        StratumState st = make_stratum_state(fam, current, opt);
        bool harvested = false;
        while (!harvested) {
          if (st.k + 1 > fam.n - 2 * st.nu)
            fail(ErrKind::TrackingFailure, "stratum order exhausted without a terminal event");
          StratumState next = enter_stratum(fam, st, opt);
          CertStage stage = detail::stage_from_point(fam, next.pt, "stratum", next.k);
          stage.events.assign(next.history.end() - 1, next.history.end());
          stage.bp_trajectory = next.bp_trajectory;
          cert.stages.push_back(stage);
          if (!next.last_event.empty()) {
            FamilyPoint got = harvest_node(fam, next, opt);
            current = got;
            ++nu;
            cert.stages.push_back(detail::stage_from_point(fam, current, "harvest", 0));
            harvested = true;
          } else {
            st = next;
          }
        }
      }
      cert.success = true;
      return cert;
    } catch (const Error& e) {
      failure = e.what();
      continue;  // restart with a rotated smoothing subset
    }
  }
  cert.failure_stage = failure;
  return cert;
}

}  // namespace curvedef
