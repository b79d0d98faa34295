#pragma once

#include <optional>
#include <vector>

#include "curvedef/branchcurve.hpp"
#include "curvedef/classify.hpp"
#include "curvedef/puiseux.hpp"
#include "curvedef/resultant.hpp"
#include "curvedef/track.hpp"

namespace curvedef {

/// Invariants of the germ at the origin.
struct SingularityReport {
  int d = 0;       // degree of the projection
  int n = 0;       // length of the relative T^1 module at the origin
  int b = 0;       // number of branches (boundary components)
  int mu = 0;      // local intersection length of the two first partials
  int delta = 0;   // virtual number of nodes
  GaussRat shear;  // z -> z + shear*w applied during normalization (0 = none)
  std::vector<PuiseuxBranch> branches;
};

struct NormalizedGerm {
  WeierstrassPoly P;
  GaussRat shear{0};
  int truncation = 0;  // 0 = exact; otherwise z-degree of the unit-division window
};

/// Bring a germ through the origin to Weierstrass form. If the leading
/// w-coefficient is a unit at 0 the division is performed as a truncated
/// series; if it vanishes at 0 the coordinates are sheared z -> z + lambda*w
/// first (a w-shear cannot change the leading w-coefficient).
inline NormalizedGerm normalize_germ(const BiPoly& F) {
  require(!F.is_zero(), ErrKind::InvalidInput, "zero polynomial");
  require(F.eval(GaussRat(0), GaussRat(0)).is_zero(), ErrKind::InvalidInput, "germ must pass through the origin");
  require(F.degree_w() >= 1, ErrKind::InvalidInput, "germ must depend on w");

  BiPoly G = F;
  GaussRat shear(0);
  UniPoly L = G.lead_w();
  if (L.ord0() != 0) {
    // leading coefficient vanishes at 0: shear until the top-degree form is
    // nonzero along the new vertical direction
    auto rng = make_rng(0x73686561);
    std::uniform_int_distribution<int> num(1, 4), den(1, 4), sign(0, 1);
    bool found = false;
    for (int attempt = 0; attempt < 64 && !found; ++attempt) {
      Rat lam(num(rng), den(rng));
      if (sign(rng)) lam = -lam;
      BiPoly cand = G.shear_z(GaussRat(lam));
      if (cand.lead_w().ord0() == 0) {
        G = cand;
        shear = GaussRat(lam);
        found = true;
      }
    }
    require(found, ErrKind::NumericFailure, "no shear made the leading coefficient a unit");
    L = G.lead_w();
  }

  int truncation = 0;
  BiPoly P;
  if (L.degree() == 0) {
    P = L.coeff(0).inv() * G;
  } else {
    // L(0) != 0: divide by the unit as a truncated series in z
    const int N = 2 * G.degree_z() + 4;
    truncation = N;
    // inverse series of L to order N
    std::vector<GaussRat> inv(static_cast<size_t>(N) + 1);
    GaussRat l0 = L.coeff(0);
    inv[0] = l0.inv();
    for (int k = 1; k <= N; ++k) {
      GaussRat acc(0);
      for (int j = 1; j <= k; ++j) acc += L.coeff(j) * inv[static_cast<size_t>(k - j)];
      inv[static_cast<size_t>(k)] = -(acc * inv[0]);
    }
    UniPoly Linv{std::vector<GaussRat>(inv)};
    auto cs = G.w_coeffs();
    const int dw = G.degree_w();
    std::vector<UniPoly> out(static_cast<size_t>(dw) + 1);
    for (int j = 0; j < dw; ++j) {
      UniPoly prod = cs[static_cast<size_t>(j)] * Linv;
      // truncate to the window
      std::vector<GaussRat> t;
      for (int k = 0; k <= std::min(N, prod.degree()); ++k) t.push_back(prod.coeff(k));
      out[static_cast<size_t>(j)] = UniPoly(std::move(t));
    }
    out[static_cast<size_t>(dw)] = UniPoly::one();
    P = BiPoly::from_w_coeffs(out);
  }

  WeierstrassPoly W(P);
  if (W.degree() >= 2) {
    UniPoly disc = discriminant_w(W);
    require(!disc.is_zero(), ErrKind::MultipleComponent, "germ has a repeated factor");
  }
  return NormalizedGerm{W, shear, truncation};
}

/// Vanishing order of the discriminant: at z = 0 when localized, otherwise
/// the total order over all roots strictly inside the unit disc (multiplicity
/// structure exact via squarefree decomposition, location numeric).
inline int t1_length(const WeierstrassPoly& P, bool localize_at_origin = true) {
  require(P.degree() >= 1, ErrKind::InvalidInput, "degree must be positive");
  if (P.degree() == 1) return 0;
  UniPoly disc = discriminant_w(P);
  require(!disc.is_zero(), ErrKind::MultipleComponent, "identically zero discriminant");
  if (localize_at_origin) return disc.ord0();
  int total = disc.ord0();
  UniPoly rest = disc.shifted_down(disc.ord0());
  if (rest.degree() >= 1) {
    auto factors = squarefree_decomposition(rest);
    for (size_t k = 0; k < factors.size(); ++k) {
      if (factors[k].degree() < 1) continue;
      RootSet rs = roots(factors[k].to_complex());
      for (size_t i = 0; i < rs.points.size(); ++i)
        if (std::abs(rs.points[i]) < 1.0 - 1e-9)
          total += static_cast<int>(k + 1) * rs.multiplicities[i];
    }
  }
  return total;
}

namespace detail {

/// Monodromy radius: half the smallest nonzero discriminant-root modulus,
/// or 1/2 when the discriminant is a pure power of z.
inline double monodromy_radius(const UniPoly& disc) {
  int o = disc.ord0();
  UniPoly rest = disc.shifted_down(o);
  if (rest.degree() < 1) return 0.5;
  RootSet rs = roots(rest.to_complex());
  double m = 1e300;
  for (auto& r : rs.points)
    if (std::abs(r) > 1e-7) m = std::min(m, std::abs(r));
  if (m > 1e200) return 0.5;
  return std::min(0.5, 0.5 * m);
}

/// Indices of the boundary strands that converge into the origin cluster.
/// A root of multiplicity m is only computed to machine-eps^(1/m), so the
/// zero-cluster test uses a coarse radius.
inline std::vector<bool> strands_to_origin(const CBiPoly& P, double rho) {
  CPoly fiber0 = P.fiber({0, 0});
  RootSet f0 = roots(fiber0, 1e-2);
  double min_nonzero = 1e300;
  for (auto& r : f0.points)
    if (std::abs(r) > 1e-2) min_nonzero = std::min(min_nonzero, std::abs(r));
  const int d = P.degree_w();
  if (min_nonzero > 1e200) return std::vector<bool>(static_cast<size_t>(d), true);
  double tau = 0.5 * min_nonzero;
  ZPath radial = ZPath::polyline({Cplx{rho, 0}, Cplx{rho * 0.05, 0}});
  RootTrack t = track(P, radial);
  std::vector<bool> conv(static_cast<size_t>(d), false);
  const auto& endroots = t.steps.back().roots;
  for (int i = 0; i < d; ++i) conv[static_cast<size_t>(i)] = std::abs(endroots[static_cast<size_t>(i)]) < tau;
  return conv;
}

}  // namespace detail

/// Number of local branches at the origin: cycles of the monodromy around a
/// small circle, restricted to the strands converging into the singular
/// point; cross-checked against the Newton-Puiseux branch count.
inline int branch_count(const WeierstrassPoly& P, const std::vector<PuiseuxBranch>* known_branches = nullptr) {
  const int n_local = t1_length(P, true);
  require(t1_length(P, false) == n_local, ErrKind::InvalidInput,
          "germ has singular fibers away from the origin inside the disc");
  CBiPoly cp = CBiPoly::from_exact(P.base());
  int b_mono = 0;
  if (P.degree() == 1) {
    b_mono = 1;
  } else {
    UniPoly disc = discriminant_w(P);
    double rho = detail::monodromy_radius(disc);
    Perm sigma = boundary_monodromy(cp, rho);
    std::vector<bool> conv = detail::strands_to_origin(cp, rho);
    // cycles of sigma restricted to converging strands (sigma preserves them)
    std::vector<bool> seen(sigma.size(), false);
    for (size_t i = 0; i < sigma.size(); ++i) {
      if (!conv[i] || seen[i]) continue;
      ++b_mono;
      int j = static_cast<int>(i);
      while (!seen[static_cast<size_t>(j)]) {
        seen[static_cast<size_t>(j)] = true;
        require(conv[static_cast<size_t>(j)], ErrKind::InternalInconsistency,
                "monodromy does not preserve the origin cluster");
        j = sigma[static_cast<size_t>(j)];
      }
    }
  }
  int order = std::min(40, 2 * n_local + 4);
  std::vector<PuiseuxBranch> local;
  const std::vector<PuiseuxBranch>& branches =
      known_branches ? *known_branches : (local = newton_puiseux(P, order), local);
  if (static_cast<int>(branches.size()) != b_mono)
    fail(ErrKind::InternalInconsistency, "monodromy branch count disagrees with Newton-Puiseux");
  return b_mono;
}

/// mu = ord_0 Res_w(dP/dz, dP/dw), computed after shears that keep both
/// leading w-coefficients away from zero and validated by agreement across
/// two random shears.
inline int milnor_length(const WeierstrassPoly& P) {
  auto attempt = [&](const GaussRat& lam) -> std::optional<int> {
    BiPoly Q = lam.is_zero() ? P.base() : P.base().shear_z(lam);
    BiPoly f = Q.derivative_z();
    BiPoly g = Q.derivative_w();
    if (f.is_zero()) return 0;
    if (f.degree_w() >= 1 && f.lead_w().ord0() != 0) return std::nullopt;
    if (g.degree_w() >= 1 && g.lead_w().ord0() != 0) return std::nullopt;
    UniPoly r = resultant_w(f, g);
    if (r.is_zero()) return std::nullopt;
    return r.ord0();
  };
  auto rng = make_rng(0x6d696c6e);
  std::uniform_int_distribution<int> num(1, 5), den(1, 5), sign(0, 1);
  std::vector<int> values;
  for (int tries = 0; tries < 64 && values.size() < 2; ++tries) {
    Rat lam(num(rng), den(rng));
    if (sign(rng)) lam = -lam;
    if (auto v = attempt(GaussRat(lam))) values.push_back(*v);
  }
  require(values.size() == 2, ErrKind::NumericFailure, "no generic shear found for the intersection length");
  require(values[0] == values[1], ErrKind::InternalInconsistency,
          "intersection length disagrees across shears");
  return values[0];
}

namespace detail {

/// Perturbation oracle: wiggle the z-components of the branch
/// parameterizations by random lower-order terms, rebuild the curve, and
/// count its nodes with the fiber classifier.
///
/// The perturbation sizes put the whole singular structure at scale ~1e-6,
/// where the discriminant of a unit-scale polynomial loses all significant
/// digits to cancellation. The curve is therefore built exactly (rationalized
/// draws, exact elimination), recentered onto the structure by an exact
/// affine substitution, and only then classified in floating point.
inline int delta_oracle(const std::vector<PuiseuxBranch>& branches, std::uint64_t salt) {
  auto rng = make_rng(0x64656c74 ^ salt);
  std::uniform_real_distribution<double> mag(1e-3, 1e-2), ang(0.0, 2.0 * M_PI);
  std::vector<ExactBranch> eb;
  for (const auto& b : branches) {
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
  BiPoly Fx = curve_from_branches_exact(eb);
  if (Fx.degree_w() < 2) return 0;
  FiberReport rep = classify_exact_local(Fx);
  if (rep.classification == FiberClass::Degenerate)
    fail(ErrKind::NumericFailure, "degenerate perturbation draw");
  return rep.nu;
}

}  // namespace detail

/// Virtual number of nodes. Primary route: (mu + b - 1)/2; always
/// cross-checked against the perturbation oracle (nodes of a generic wiggle
/// of the branch parameterizations). A mismatch is an error, never patched.
inline int delta_invariant(const WeierstrassPoly& P, const std::vector<PuiseuxBranch>& branches, int b, int mu) {
  require((mu + b - 1) % 2 == 0, ErrKind::InternalInconsistency,
          "parity violation in (mu + b - 1)/2");
  int formula = (mu + b - 1) / 2;
  int oracle = -1;
  for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
    try {
      oracle = detail::delta_oracle(branches, attempt);
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrKind::NumericFailure) throw;  // only degenerate draws are retried
    }
  }
  require(oracle >= 0, ErrKind::NumericFailure, "all perturbation draws degenerate");
  if (oracle != formula)
    fail(ErrKind::InternalInconsistency, "delta mismatch: formula " + std::to_string(formula) +
                                             " vs perturbation oracle " + std::to_string(oracle));
  return formula;
}

/// Full invariant report of the germ at the origin.
inline SingularityReport analyze_germ(const BiPoly& F) {
  NormalizedGerm g = normalize_germ(F);
  SingularityReport rep;
  rep.shear = g.shear;
  rep.d = g.P.degree();
  rep.n = t1_length(g.P, true);
  int order = std::min(40, 2 * rep.n + 4);
  rep.branches = newton_puiseux(g.P, order);
  rep.b = branch_count(g.P, &rep.branches);
  rep.mu = milnor_length(g.P);
  rep.delta = delta_invariant(g.P, rep.branches, rep.b, rep.mu);
  return rep;
}

}  // namespace curvedef
