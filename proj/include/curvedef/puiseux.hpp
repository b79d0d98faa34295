#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "curvedef/bipoly.hpp"
#include "curvedef/roots.hpp"

namespace curvedef {

/// One local branch over z = 0 through w = 0, parameterized as
/// zeta -> (zeta^ram, phi(zeta)) with phi a truncated power series.
struct PuiseuxBranch {
  int ram = 1;       // ramification degree d_j (exponent of zeta in the z-component)
  CPoly phi;         // w-component coefficients, phi[k] multiplies zeta^k
  int order = 0;     // truncation order: exponents <= order are meaningful
};

namespace series {

inline CPoly trunc(CPoly a, int len) {
  if (static_cast<int>(a.size()) > len) a.resize(static_cast<size_t>(len));
  return a;
}

inline CPoly mul(const CPoly& a, const CPoly& b, int len) {
  CPoly r(std::min<size_t>(static_cast<size_t>(len), a.empty() || b.empty() ? 0 : a.size() + b.size() - 1), Cplx{0, 0});
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == Cplx{0, 0}) continue;
    for (size_t j = 0; j < b.size() && i + j < r.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

/// Multiplicative inverse of a unit series, by Newton doubling.
inline CPoly inverse(const CPoly& v, int len) {
  require(!v.empty() && std::abs(v[0]) > 1e-300, ErrKind::InvalidInput, "series inverse of non-unit");
  CPoly inv{1.0 / v[0]};
  int prec = 1;
  while (prec < len) {
    prec = std::min(2 * prec, len);
    CPoly t = mul(v, inv, prec);
    for (auto& c : t) c = -c;
    t[0] += 2.0;
    inv = mul(inv, t, prec);
  }
  return inv;
}

/// P(z, phi(z)) truncated to length len (Horner in w).
inline CPoly eval_bipoly(const CBiPoly& P, const CPoly& phi, int len) {
  CPoly r;
  for (size_t j = P.wc.size(); j-- > 0;) {
    r = mul(r, phi, len);
    CPoly c = trunc(P.wc[j], len);
    r = cadd(r, c);
    r = trunc(r, len);
  }
  return r;
}

}  // namespace series

namespace detail {

struct NPOptions {
  double support_rel_tol = 1e-11;
  int max_depth = 48;
};

/// Solve P(z, phi(z)) = 0 for a power-series phi with phi(0) = 0, valid when
/// w = 0 is a simple root of the fiber at z = 0 (series Newton, doubling).
inline CPoly series_root(const CBiPoly& P, int len) {
  CBiPoly Pw = P.deriv_w();
  CPoly phi{Cplx{0, 0}};
  int prec = 1;
  while (prec < len) {
    prec = std::min(2 * prec, len);
    CPoly val = series::eval_bipoly(P, phi, prec);
    CPoly der = series::eval_bipoly(Pw, phi, prec);
    CPoly corr = series::mul(val, series::inverse(der, prec), prec);
    phi.resize(static_cast<size_t>(prec), Cplx{0, 0});
    for (size_t k = 0; k < corr.size(); ++k) phi[k] -= corr[k];
  }
  // phi(0) must stay at the chosen root
  phi[0] = Cplx{0, 0};
  return phi;
}

inline std::vector<PuiseuxBranch> puiseux_recurse(CBiPoly P, int order, int depth, const NPOptions& opt) {
  require(depth < opt.max_depth, ErrKind::InternalInconsistency, "puiseux recursion too deep");
  // normalize scale so support thresholds are meaningful
  double scale = 0;
  for (auto& c : P.wc) for (auto& v : c) scale = std::max(scale, std::abs(v));
  require(scale > 1e-300, ErrKind::InvalidInput, "zero polynomial in puiseux recursion");
  for (auto& c : P.wc) for (auto& v : c) v /= scale;
  const double tol = opt.support_rel_tol;
  const int len = order + 2;

  // z-valuation of each w-coefficient (-1: identically ~0)
  const int dw = P.degree_w();
  std::vector<int> val(static_cast<size_t>(dw) + 1, -1);
  for (int j = 0; j <= dw; ++j) {
    const CPoly& c = P.wc[static_cast<size_t>(j)];
    for (size_t i = 0; i < c.size(); ++i)
      if (std::abs(c[i]) > tol) { val[static_cast<size_t>(j)] = static_cast<int>(i); break; }
  }

  std::vector<PuiseuxBranch> out;

  // w | P: the sheet w == 0 is an exact branch; recurse on the quotient.
  if (val[0] < 0) {
    require(dw >= 1, ErrKind::InternalInconsistency, "degenerate germ");
    if (val[1] < 0) fail(ErrKind::MultipleComponent, "w^2 divides the germ");
    PuiseuxBranch zero;
    zero.ram = 1;
    zero.order = order;
    out.push_back(zero);
    if (val[1] > 0) {  // quotient still passes through the origin
      CBiPoly Q(std::vector<CPoly>(P.wc.begin() + 1, P.wc.end()));
      auto rest = puiseux_recurse(Q, order, depth + 1, opt);
      out.insert(out.end(), rest.begin(), rest.end());
    }
    return out;
  }
  require(val[0] > 0, ErrKind::InvalidInput, "puiseux: origin is not on the curve");

  // multiplicity of the w = 0 cluster in the fiber over z = 0
  int m0 = -1;
  for (int j = 0; j <= dw; ++j)
    if (val[static_cast<size_t>(j)] == 0) { m0 = j; break; }
  require(m0 >= 1, ErrKind::InvalidInput, "puiseux: fiber vanishes identically over z = 0");

  if (m0 == 1 && val[1] == 0) {
    // simple root: one analytic branch
    PuiseuxBranch b;
    b.ram = 1;
    b.phi = series::trunc(series_root(P, len), order + 1);
    b.order = order;
    out.push_back(b);
    return out;
  }

  // lower Newton polygon between (0, val_0) and (m0, 0)
  struct Pt { int j, v; };
  std::vector<Pt> pts;
  for (int j = 0; j <= m0; ++j)
    if (val[static_cast<size_t>(j)] >= 0) pts.push_back({j, val[static_cast<size_t>(j)]});
  std::vector<Pt> hull;
  for (const Pt& p : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull[hull.size() - 1];
      // keep lower-convex: slope(a,b) <= slope(b,p)
      if (static_cast<long>(b.v - a.v) * (p.j - b.j) >= static_cast<long>(p.v - b.v) * (b.j - a.j))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }

  for (size_t e = 0; e + 1 < hull.size(); ++e) {
    const Pt a = hull[e], b = hull[e + 1];
    if (a.v <= b.v) continue;  // only strictly negative slopes: branches with w -> 0
    int dj = b.j - a.j, dv = a.v - b.v;
    int g = std::gcd(dj, dv);
    int p = dj / g, q = dv / g;

    // edge polynomial: lattice points (a.j + k*p, a.v - k*q)
    int K = dj / p;
    CPoly edge(static_cast<size_t>(K) + 1, Cplx{0, 0});
    for (int k = 0; k <= K; ++k) {
      int j = a.j + k * p, v = a.v - k * q;
      const CPoly& cj = P.wc[static_cast<size_t>(j)];
      if (v < static_cast<int>(cj.size())) edge[static_cast<size_t>(k)] = cj[static_cast<size_t>(v)];
    }
    RootSet eroots = roots(edge, 1e-7);

    // group conjugate roots: c ~ c * exp(2*pi*i*q/p)
    std::vector<bool> used(eroots.points.size(), false);
    Cplx omega = std::exp(Cplx{0, 2.0 * M_PI * q / p});
    for (size_t ri = 0; ri < eroots.points.size(); ++ri) {
      if (used[ri]) continue;
      Cplx c = eroots.points[ri];
      if (std::abs(c) < 1e-9) continue;  // zero roots belong to other edges
      // mark the whole conjugacy orbit
      Cplx cc = c;
      for (int step = 0; step < p; ++step) {
        for (size_t rj = 0; rj < eroots.points.size(); ++rj)
          if (!used[rj] && std::abs(eroots.points[rj] - cc) < 1e-7 * std::max(1.0, std::abs(cc))) used[rj] = true;
        cc *= omega;
      }

      // substitute z -> z^p, w -> z^q (c + w), divide by z^(p*a.v + q*a.j)
      const int shift = p * a.v + q * a.j;
      std::vector<CPoly> sub(static_cast<size_t>(dw) + 1);
      // (c + w)^j expansion accumulated by Horner over w-coefficients
      // build directly: term c_{i,j} z^{ip + jq - shift} (c+w)^j
      std::vector<std::vector<Cplx>> binom(static_cast<size_t>(dw) + 1);
      for (int j = 0; j <= dw; ++j) {
        binom[static_cast<size_t>(j)].assign(static_cast<size_t>(j) + 1, Cplx{0, 0});
        // coefficients of (c + w)^j
        binom[static_cast<size_t>(j)][0] = std::pow(c, j);
        for (int t = 1; t <= j; ++t)
          binom[static_cast<size_t>(j)][static_cast<size_t>(t)] =
              binom[static_cast<size_t>(j)][static_cast<size_t>(t - 1)] * static_cast<double>(j - t + 1) / (static_cast<double>(t) * c);
      }
      for (auto& s : sub) s.assign(static_cast<size_t>(len), Cplx{0, 0});
      for (int j = 0; j <= dw; ++j) {
        const CPoly& cj = P.wc[static_cast<size_t>(j)];
        for (int i = 0; i < static_cast<int>(cj.size()); ++i) {
          if (cj[static_cast<size_t>(i)] == Cplx{0, 0}) continue;
          long zexp = static_cast<long>(i) * p + static_cast<long>(j) * q - shift;
          if (zexp < 0 || zexp >= len) continue;
          for (int t = 0; t <= j; ++t)
            sub[static_cast<size_t>(t)][static_cast<size_t>(zexp)] +=
                cj[static_cast<size_t>(i)] * binom[static_cast<size_t>(j)][static_cast<size_t>(t)];
        }
      }
      CBiPoly P1(std::move(sub));
      P1.trim(0.0);

      auto children = puiseux_recurse(P1, order, depth + 1, opt);
      for (const auto& ch : children) {
        PuiseuxBranch br;
        br.ram = p * ch.ram;
        br.order = order;
        // phi(zeta) = zeta^{q * ch.ram} * (c + ch.phi(zeta))
        CPoly inner = ch.phi;
        if (inner.empty()) inner = CPoly{Cplx{0, 0}};
        inner[0] += c;
        long lead = static_cast<long>(q) * ch.ram;
        CPoly phi(static_cast<size_t>(order) + 1, Cplx{0, 0});
        for (size_t k = 0; k < inner.size(); ++k) {
          long expn = lead + static_cast<long>(k);
          if (expn <= order) phi[static_cast<size_t>(expn)] += inner[k];
        }
        ctrim(phi);
        br.phi = phi;
        out.push_back(br);
      }
    }
  }
  return out;
}

}  // namespace detail

/// Sup-norm residual of a branch: max |P(zeta^ram, phi(zeta))| over sample
/// points on |zeta| = radius.
inline double branch_residual(const CBiPoly& P, const PuiseuxBranch& b, double radius = 0.1, int samples = 8) {
  double worst = 0;
  for (int k = 0; k < samples; ++k) {
    double ang = 2.0 * M_PI * k / samples + 0.39;
    Cplx zeta = radius * Cplx{std::cos(ang), std::sin(ang)};
    Cplx z = std::pow(zeta, b.ram);
    Cplx w = ceval(b.phi, zeta);
    worst = std::max(worst, std::abs(P.eval(z, w)));
  }
  return worst;
}

/// Newton-polygon recursion: one branch per place of the germ over z = 0
/// through the w = 0 cluster. Ramification degrees sum to the local
/// w-multiplicity of the fiber.
inline std::vector<PuiseuxBranch> newton_puiseux(const WeierstrassPoly& P, int order) {
  require(order >= 1 && order <= 40, ErrKind::OrderTooHigh, "puiseux order must be in [1, 40]");
  CBiPoly cp = CBiPoly::from_exact(P.base());
  require(std::abs(cp.eval({0, 0}, {0, 0})) < 1e-12, ErrKind::InvalidInput, "origin is not a zero of the germ");
  auto branches = detail::puiseux_recurse(cp, order, 0, detail::NPOptions{});
  for (const auto& b : branches) {
    double growth = 0;
    for (auto& c : b.phi) growth = std::max(growth, std::abs(c));
    require(growth < 1e12, ErrKind::OrderTooHigh, "puiseux coefficients overflow at requested order");
  }
  return branches;
}

}  // namespace curvedef
