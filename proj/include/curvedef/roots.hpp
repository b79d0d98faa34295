#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "curvedef/cpoly.hpp"
#include "curvedef/error.hpp"
#include "curvedef/rng.hpp"

namespace curvedef {

/// Roots of a univariate polynomial, clustered by proximity.
/// Sum of multiplicities equals the polynomial degree; cluster representatives
/// are pairwise separated by more than the clustering radius.
struct RootSet {
  std::vector<Cplx> points;
  std::vector<int> multiplicities;
  double residual = 0.0;

  int total() const {
    int t = 0;
    for (int m : multiplicities) t += m;
    return t;
  }
};

struct RootOptions {
  double cluster_radius = 1e-7;
  int max_sweeps = 200;
  std::uint64_t seed_salt = 0x726f6f74;  // initial-circle phase jitter
};

namespace detail {

/// Aberth-Ehrlich simultaneous iteration. Seeds on a perturbed circle unless
/// warm-start values are supplied.
inline std::vector<Cplx> aberth(const CPoly& poly, const RootOptions& opt,
                                const std::vector<Cplx>* warm, double* out_residual) {
  CPoly p = poly;
  ctrim(p);
  const int n = cdegree(p);
  require(n >= 1, ErrKind::InvalidInput, "root finding needs degree >= 1");
  require(n <= 64, ErrKind::InvalidInput, "root finding limited to degree <= 64");
  require(std::abs(p.back()) > 1e-300, ErrKind::InvalidInput, "leading coefficient underflow");

  CPoly dp = cderiv(p);
  std::vector<Cplx> x(static_cast<size_t>(n));
  if (warm && static_cast<int>(warm->size()) == n) {
    x = *warm;
    // split exact collisions so the Aberth denominators stay finite
    for (size_t i = 0; i < x.size(); ++i)
      for (size_t j = 0; j < i; ++j)
        if (std::abs(x[i] - x[j]) < 1e-14) x[i] += Cplx{3e-13, 1e-13};
  } else {
    double r = 0;
    for (int k = 0; k < n; ++k) {
      double a = std::abs(p[static_cast<size_t>(k)] / p[static_cast<size_t>(n)]);
      if (a > 0) r = std::max(r, 2.0 * std::pow(a, 1.0 / (n - k)));
    }
    if (r == 0) r = 0.5;
    auto rng = make_rng(opt.seed_salt);
    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    double phase = jitter(rng) * 2.0 * M_PI;
    for (int i = 0; i < n; ++i) {
      double ang = phase + 2.0 * M_PI * i / n + 0.3 / n;
      x[static_cast<size_t>(i)] = 0.7 * r * Cplx{std::cos(ang), std::sin(ang)};
    }
  }

  double coeff_scale = 0;
  for (auto& c : p) coeff_scale = std::max(coeff_scale, std::abs(c));
  // |p(z)| relative to the coefficient scale, with growth allowance for |z|>1
  auto norm_residual = [&](Cplx z) {
    double az = std::max(1.0, std::abs(z));
    return std::abs(ceval(p, z)) / (coeff_scale * std::pow(az, n) + 1e-300);
  };

  double best = 1e300;
  std::vector<Cplx> best_x = x;
  for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    double worst = 0, max_step = 0;
    for (int i = 0; i < n; ++i) {
      Cplx zi = x[static_cast<size_t>(i)];
      Cplx pv = ceval(p, zi);
      worst = std::max(worst, norm_residual(zi));
      Cplx dv = ceval(dp, zi);
      if (std::abs(dv) < 1e-300) dv = Cplx{1e-300, 0};
      Cplx newton = pv / dv;
      Cplx sum{0, 0};
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        Cplx diff = zi - x[static_cast<size_t>(j)];
        if (std::abs(diff) < 1e-300) diff = Cplx{1e-300, 0};
        sum += 1.0 / diff;
      }
      Cplx denom = 1.0 - newton * sum;
      if (std::abs(denom) < 1e-300) denom = Cplx{1e-300, 0};
      Cplx corr = newton / denom;
      max_step = std::max(max_step, std::abs(corr));
      x[static_cast<size_t>(i)] = zi - corr;
    }
    if (worst < best) {
      best = worst;
      best_x = x;
    }
    if (worst < 1e-14 || max_step < 1e-15) break;
  }

  double final_worst = 0;
  for (auto& z : x) final_worst = std::max(final_worst, norm_residual(z));
  if (final_worst > best) {
    x = best_x;
    final_worst = best;
  }

  if (final_worst > 1e-9) {
    Error e(ErrKind::NumericFailure, "root iteration did not converge");
    e.with_residual(final_worst);
    throw e;
  }
  if (out_residual) *out_residual = final_worst;
  return x;
}

}  // namespace detail

/// Cluster raw roots within the given radius (transitive closure); the
/// representative is the cluster centroid and carries the summed multiplicity.
inline RootSet cluster_roots(const std::vector<Cplx>& raw, double radius, double residual = 0.0) {
  const int n = static_cast<int>(raw.size());
  std::vector<int> group(static_cast<size_t>(n), -1);
  int ng = 0;
  for (int i = 0; i < n; ++i) {
    if (group[static_cast<size_t>(i)] >= 0) continue;
    group[static_cast<size_t>(i)] = ng;
    // breadth-first closure
    std::vector<int> stack{i};
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < n; ++b)
        if (group[static_cast<size_t>(b)] < 0 && std::abs(raw[static_cast<size_t>(a)] - raw[static_cast<size_t>(b)]) <= radius) {
          group[static_cast<size_t>(b)] = ng;
          stack.push_back(b);
        }
    }
    ++ng;
  }
  RootSet rs;
  rs.points.assign(static_cast<size_t>(ng), Cplx{0, 0});
  rs.multiplicities.assign(static_cast<size_t>(ng), 0);
  for (int i = 0; i < n; ++i) {
    rs.points[static_cast<size_t>(group[static_cast<size_t>(i)])] += raw[static_cast<size_t>(i)];
    rs.multiplicities[static_cast<size_t>(group[static_cast<size_t>(i)])] += 1;
  }
  for (int g = 0; g < ng; ++g) rs.points[static_cast<size_t>(g)] /= static_cast<double>(rs.multiplicities[static_cast<size_t>(g)]);
  rs.residual = residual;
  return rs;
}

/// All roots of p with multiplicities recovered by clustering.
inline RootSet roots(const CPoly& p, double cluster_radius = 1e-7, const RootOptions& base_opt = {}) {
  RootOptions opt = base_opt;
  opt.cluster_radius = cluster_radius;
  double res = 0;
  auto raw = detail::aberth(p, opt, nullptr, &res);
  return cluster_roots(raw, cluster_radius, res);
}

/// Raw (unclustered) roots, optionally warm-started; used by the tracker.
inline std::vector<Cplx> raw_roots(const CPoly& p, const std::vector<Cplx>* warm = nullptr,
                                   double* out_residual = nullptr, const RootOptions& opt = {}) {
  return detail::aberth(p, opt, warm, out_residual);
}

}  // namespace curvedef
