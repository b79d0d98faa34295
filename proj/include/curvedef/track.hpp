#pragma once

#include <algorithm>
#include <ostream>
#include <vector>

#include "curvedef/path.hpp"
#include "curvedef/perm.hpp"
#include "curvedef/roots.hpp"

namespace curvedef {

struct TrackStep {
  Cplx z;
  std::vector<Cplx> roots;  // strand order
};

/// Analytic continuation of the w-roots of a monic fiber polynomial along a
/// path in the z-disc. Strands keep their index; the permutation matches the
/// end fiber back to the canonically ordered start fiber.
struct RootTrack {
  ZPath path;
  std::vector<TrackStep> steps;
  Perm permutation;
  double max_residual = 0.0;
  double min_gap = 1e300;
};

struct TrackOptions {
  double init_step = 0.1;
  double max_step = 0.25;
  double min_step = 1e-9;
  double gap_floor = 1e-9;
  double ambiguity_ratio = 2.0;
  bool record_steps = true;
};

namespace detail {

inline std::vector<size_t> canonical_order(const std::vector<Cplx>& v) {
  std::vector<size_t> idx(v.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    if (std::abs(v[a].real() - v[b].real()) > 1e-12) return v[a].real() < v[b].real();
    return v[a].imag() < v[b].imag();
  });
  return idx;
}

inline double min_pairwise_gap(const std::vector<Cplx>& v) {
  double g = 1e300;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) g = std::min(g, std::abs(v[i] - v[j]));
  return g;
}

/// Nearest-neighbor strand matching with ambiguity rejection: fails if a
/// strand's two best candidates are within the ambiguity ratio, or if the
/// greedy matching is not a bijection.
inline bool match_strands(const std::vector<Cplx>& cur, const std::vector<Cplx>& next, double ratio,
                          std::vector<Cplx>& matched) {
  const size_t d = cur.size();
  matched.assign(d, Cplx{0, 0});
  std::vector<bool> used(d, false);
  for (size_t i = 0; i < d; ++i) {
    double d1 = 1e300, d2 = 1e300;
    size_t best = 0;
    for (size_t j = 0; j < d; ++j) {
      double dist = std::abs(next[j] - cur[i]);
      if (dist < d1) {
        d2 = d1;
        d1 = dist;
        best = j;
      } else if (dist < d2) {
        d2 = dist;
      }
    }
    if (d > 1 && d1 > 1e-13 && d2 < ratio * d1) return false;
    if (used[best]) return false;
    used[best] = true;
    matched[i] = next[best];
  }
  return true;
}

}  // namespace detail

/// Track the w-roots of P (monic in w) along the path. Every accepted step
/// satisfies the half-gap condition; matching is nearest-neighbor with
/// ambiguity rejection, and rejected steps halve the step size.
inline RootTrack track(const CBiPoly& P, const ZPath& path_in, const TrackOptions& opt = {}) {
  ZPath path = path_in.orientation >= 0 ? path_in : path_in.reversed();
  require(!P.wc.empty() && cdegree(P.wc.back()) == 0 && std::abs(P.wc.back()[0]) > 1e-300,
          ErrKind::InvalidInput, "track requires a polynomial monic (constant leading coefficient) in w");
  require(!path.segs.empty(), ErrKind::InvalidInput, "empty path");
  const int d = P.degree_w();

  auto clearance_ok = [&](Cplx z) {
    for (const auto& e : path.exclusions)
      if (std::abs(z - e) < path.clearance) return false;
    return true;
  };

  RootTrack out;
  out.path = path_in;

  Cplx z0 = path.start();
  if (!clearance_ok(z0)) throw Error(ErrKind::PathTooClose, "path starts inside clearance zone").with_location(z0);
  double res = 0;
  std::vector<Cplx> cur = raw_roots(P.fiber(z0), nullptr, &res);
  out.max_residual = res;
  // canonical strand order at the start
  {
    auto ord = detail::canonical_order(cur);
    std::vector<Cplx> sorted(cur.size());
    for (size_t k = 0; k < ord.size(); ++k) sorted[k] = cur[ord[k]];
    cur = sorted;
  }
  std::vector<Cplx> start_roots = cur;
  if (opt.record_steps) out.steps.push_back({z0, cur});

  for (const auto& seg : path.segs) {
    double t = 0.0;
    double dt = opt.init_step;
    while (t < 1.0) {
      double t2 = std::min(1.0, t + dt);
      Cplx z2 = seg.at(t2);
      if (!clearance_ok(z2)) throw Error(ErrKind::PathTooClose, "path violates clearance").with_location(z2);

      double gap = d > 1 ? detail::min_pairwise_gap(cur) : 1e300;
      out.min_gap = std::min(out.min_gap, gap);
      if (gap < opt.gap_floor)
        throw Error(ErrKind::PathTooClose, "root gap collapsed").with_location(seg.at(t));

      bool ok = false;
      std::vector<Cplx> matched;
      try {
        double step_res = 0;
        std::vector<Cplx> next = raw_roots(P.fiber(z2), &cur, &step_res);
        if (detail::match_strands(cur, next, opt.ambiguity_ratio, matched)) {
          double max_move = 0;
          for (size_t i = 0; i < matched.size(); ++i) max_move = std::max(max_move, std::abs(matched[i] - cur[i]));
          if (max_move < 0.5 * gap) {
            ok = true;
            out.max_residual = std::max(out.max_residual, step_res);
          }
        }
      } catch (const Error&) {
        ok = false;  // root solve failed at trial point; shrink the step
      }

      if (!ok) {
        dt *= 0.5;
        if (dt < opt.min_step)
          throw Error(ErrKind::PathTooClose, "step size underflow while tracking").with_location(z2);
        continue;
      }
      cur = matched;
      t = t2;
      dt = std::min(opt.max_step, dt * 1.6);
      if (opt.record_steps) out.steps.push_back({z2, cur});
    }
  }

  // end-to-start matching in canonical indexing
  auto end_rank_of = detail::canonical_order(cur);
  std::vector<int> rank(cur.size());
  for (size_t k = 0; k < end_rank_of.size(); ++k) rank[end_rank_of[k]] = static_cast<int>(k);
  out.permutation.resize(cur.size());
  for (size_t i = 0; i < cur.size(); ++i) out.permutation[i] = rank[i];
  return out;
}

/// Sheet permutation induced by one counterclockwise turn along |z| = radius.
/// Requires every discriminant root strictly inside the circle.
inline Perm boundary_monodromy(const CBiPoly& P, double radius, const TrackOptions& opt = {}) {
  require(radius > 0, ErrKind::InvalidRadius, "radius must be positive");
  const int d = P.degree_w();
  if (d <= 1) return perm_identity(std::max(d, 0));
  CPoly disc = cdiscriminant_w(P);
  ZPath path = ZPath::circle({0, 0}, radius);
  if (cdegree(disc) >= 1) {
    RootSet rs = roots(disc);
    double max_abs = 0;
    for (auto& r : rs.points) max_abs = std::max(max_abs, std::abs(r));
    if (max_abs >= radius * (1.0 - 1e-9))
      throw Error(ErrKind::InvalidRadius, "discriminant root on or outside the circle").with_residual(max_abs);
    path.exclusions = rs.points;
    path.clearance = 0.25 * (radius - max_abs);
  }
  return track(P, path, opt).permutation;
}

/// CSV dump: step, z.re, z.im, then w_k.re, w_k.im for k = 1..d.
inline void write_track_csv(const RootTrack& t, std::ostream& os) {
  os << "step,z.re,z.im";
  size_t d = t.steps.empty() ? 0 : t.steps.front().roots.size();
  for (size_t k = 1; k <= d; ++k) os << ",w" << k << ".re,w" << k << ".im";
  os << "\n";
  for (size_t s = 0; s < t.steps.size(); ++s) {
    os << s << "," << t.steps[s].z.real() << "," << t.steps[s].z.imag();
    for (const auto& w : t.steps[s].roots) os << "," << w.real() << "," << w.imag();
    os << "\n";
  }
}

}  // namespace curvedef
