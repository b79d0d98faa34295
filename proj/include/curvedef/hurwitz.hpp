#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "curvedef/perm.hpp"
#include "curvedef/track.hpp"
#include "curvedef/versal.hpp"

namespace curvedef {

/// Base-point permutation data of the projection: one permutation per branch
/// point, ordered by increasing argument of the branch point as seen from the
/// basepoint on the positive-real boundary circle. The composed product
/// perms[m-1] o ... o perms[0] equals the boundary monodromy.
struct HurwitzTuple {
  int d = 0;
  std::vector<Perm> perms;
  Cplx basepoint{0, 0};

  Perm product() const {
    Perm p = perm_identity(d);
    for (const auto& q : perms) p = perm_compose(q, p);
    return p;
  }
  bool transitive() const { return group_transitive(perms, d); }
};

/// Monodromy of each branch point along a standard lasso.
inline HurwitzTuple hurwitz_data(const VersalFamily& fam, const FamilyPoint& pt) {
  FiberReport rep = fiber_analyze(fam, pt);
  require(rep.classification == FiberClass::NodalGeneric, ErrKind::InvalidInput,
          "hurwitz data needs a nodal-generic fiber");
  HurwitzTuple out;
  out.d = fam.d;
  if (rep.branch_points.empty()) {
    out.basepoint = Cplx{1, 0};
    return out;
  }

  double max_abs = 0;
  for (const auto& bp : rep.branch_points) max_abs = std::max(max_abs, std::abs(bp.z));
  for (const auto& nd : rep.nodes) max_abs = std::max(max_abs, std::abs(nd.z));
  require(max_abs < 0.85, ErrKind::InvalidInput, "branch points too close to the boundary circle");
  const double R = 0.5 * (1.0 + max_abs);
  out.basepoint = Cplx{R, 0};

  // sort branch points by argument in [0, 2pi)
  std::vector<BranchPointInfo> bps = rep.branch_points;
  auto arg01 = [](Cplx z) {
    double a = std::arg(z);
    if (a < 0) a += 2.0 * M_PI;
    return a;
  };
  std::sort(bps.begin(), bps.end(), [&](const BranchPointInfo& a, const BranchPointInfo& b) {
    return arg01(a.z) < arg01(b.z);
  });

  std::vector<Cplx> all_events;
  for (const auto& bp : rep.branch_points) all_events.push_back(bp.z);
  for (const auto& nd : rep.nodes) all_events.push_back(nd.z);

  for (const auto& bp : bps) {
    double gap = R - std::abs(bp.z);
    for (const auto& e : all_events)
      if (std::abs(e - bp.z) > 1e-12) gap = std::min(gap, std::abs(e - bp.z));
    double r = 0.5 * gap;
    ZPath lasso = ZPath::lasso(R, bp.z, r);
    for (const auto& e : all_events)
      if (std::abs(e - bp.z) > 1e-12) lasso.exclusions.push_back(e);
    lasso.clearance = 0.4 * r;
    out.perms.push_back(track(pt.fiber, lasso).permutation);
  }
  return out;
}

/// Exchange the branch points i and i+1 (1-based i): the monodromy entries
/// transform as (.., a, b, ..) -> (.., b, b a b^{-1}, ..), preserving the
/// product and the generated group.
inline HurwitzTuple braid_move(const HurwitzTuple& t, int i) {
  require(i >= 1 && i < static_cast<int>(t.perms.size()), ErrKind::InvalidInput, "braid index out of range");
  HurwitzTuple out = t;
  const Perm& a = t.perms[static_cast<size_t>(i - 1)];
  const Perm& b = t.perms[static_cast<size_t>(i)];
  out.perms[static_cast<size_t>(i - 1)] = b;
  out.perms[static_cast<size_t>(i)] = perm_compose(perm_compose(b, a), perm_inverse(b));
  return out;
}

inline HurwitzTuple braid_move_inverse(const HurwitzTuple& t, int i) {
  require(i >= 1 && i < static_cast<int>(t.perms.size()), ErrKind::InvalidInput, "braid index out of range");
  HurwitzTuple out = t;
  const Perm& a = t.perms[static_cast<size_t>(i - 1)];
  const Perm& b = t.perms[static_cast<size_t>(i)];
  out.perms[static_cast<size_t>(i)] = a;
  out.perms[static_cast<size_t>(i - 1)] = perm_compose(perm_compose(perm_inverse(a), b), a);
  return out;
}

namespace detail {

/// Achievable delta invariants of one irreducible local place with projection
/// degree m (delta <= 4 is all the enumeration budget can reach). These are
/// the genera of two-generated value semigroups containing m in the required
/// position: for m = 3 the possibilities are smooth (0), the multiplicity-two
/// place with semigroup <2,3> (1), and <3,q> places (3, 4, ...); for m = 4
/// there is no place with delta 1; for m = 5 only even values occur.
inline bool single_place_delta(int m, int delta) {
  switch (m) {
    case 1: return delta == 0;
    case 2: return delta >= 0;
    case 3: return delta == 0 || delta == 1 || delta == 3 || delta == 4;
    case 4: return delta == 0 || (delta >= 2 && delta <= 4);
    case 5: return delta == 0 || delta == 2 || delta == 4;
    default: return false;
  }
}

/// Consistency of one connected piece of the collapse: places with the given
/// projection degrees, all through one point, with total delta as given.
/// Multi-place constraints come from the pairwise intersection multiplicities
/// of local branches: every pair through a common point meets at least once
/// (at least twice when both are vertical), a graph meets a degree-2 place of
/// type delta_A only with multiplicity in {2,4,...,2 delta_A} or 2 delta_A+1,
/// and graphs through one point have ultrametric pairwise contacts.
inline bool orbit_consistent(std::vector<int> degrees, int delta) {
  if (delta < 0) return false;
  std::sort(degrees.rbegin(), degrees.rend());
  const size_t l = degrees.size();
  if (l == 1) return single_place_delta(degrees[0], delta);
  if (l == 2) {
    int a = degrees[0], b = degrees[1];
    if (a == 1 && b == 1) return delta >= 1;
    if (a == 2 && b == 1) return delta == 1 || delta >= 3;
    if (a == 2 && b == 2) return delta >= 2;
    if (a == 3 && b == 1) return delta == 1 || delta == 3;  // delta <= 4 here
    if (a == 3 && b == 2) return delta >= 2;
    if (a == 4 && b == 1) return delta == 1 || delta == 4;  // delta <= 4 here
    return false;
  }
  if (l == 3) {
    int a = degrees[0];
    if (a == 1) return delta >= 3;                    // {1,1,1}
    if (a == 2 && degrees[1] == 1) return delta >= 3;  // {2,1,1}
    if (a == 2 && degrees[1] == 2) return delta >= 4;  // {2,2,1}
    if (a == 3) return delta >= 3;                    // {3,1,1}
    return false;
  }
  // four or more places through one point need at least six pairwise
  // intersections; unreachable within the enumeration budget
  return false;
}

}  // namespace detail

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Perm> witness;   // a realizing tuple when feasible
  long long examined = 0;      // complete candidate tuples inspected
};

/// Exhaustive feasibility of a collision pattern: can m_total simple branch
/// points of a degree-d covering with trivial total monodromy collide in
/// groups of the given sizes? Enumerates all transposition tuples with
/// trivial product and transitive generation (up to global relabeling) and
/// checks each grouping for a consistent local limit: per colliding group,
/// every orbit of the generated subgroup must admit local places matching the
/// cycles of the partial product, joined at one point, with the delta budget
/// (group size minus branching) realizable by actual plane branches.
inline FeasibilityResult collision_feasible(int d, int m_total, const std::vector<int>& split) {
  require(d >= 2 && d <= 5, ErrKind::EnumerationTooLarge, "degree out of enumeration budget");
  require(m_total >= 1 && m_total <= 8, ErrKind::EnumerationTooLarge, "branch count out of enumeration budget");
  int sum = 0;
  for (int a : split) {
    require(a >= 1, ErrKind::InvalidInput, "split parts must be positive");
    sum += a;
  }
  require(sum == m_total, ErrKind::InvalidInput, "split must sum to the total branch count");

  std::vector<Perm> transpositions;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) transpositions.push_back(perm_transposition(d, a, b));

  FeasibilityResult result;
  long long nodes_visited = 0;
  const long long node_budget = 200000000;

  std::vector<Perm> tuple;
  tuple.reserve(static_cast<size_t>(m_total));

  // check one complete tuple against the requested grouping
  auto grouping_ok = [&](const std::vector<Perm>& t) {
    size_t pos = 0;
    for (int a : split) {
      std::vector<Perm> block(t.begin() + static_cast<long>(pos), t.begin() + static_cast<long>(pos + a));
      pos += static_cast<size_t>(a);
      if (a == 1) continue;  // single branchings stay simple transpositions
      Perm prod = perm_identity(d);
      for (const auto& q : block) prod = perm_compose(q, prod);
      auto orbits = group_orbits(block, d);
      for (const auto& orbit : orbits) {
        if (orbit.size() == 1) {
          // untouched sheet unless the block moves it (it does not, by orbit def)
          bool moved = false;
          for (const auto& q : block)
            if (q[static_cast<size_t>(orbit[0])] != orbit[0]) moved = true;
          if (!moved) continue;
        }
        // entries supported inside this orbit
        int a_orbit = 0;
        for (const auto& q : block) {
          for (int x : orbit)
            if (q[static_cast<size_t>(x)] != x) {
              ++a_orbit;
              break;
            }
        }
        if (a_orbit == 0) continue;
        // cycle lengths of the block product restricted to the orbit
        std::vector<int> degrees;
        std::vector<bool> seen(static_cast<size_t>(d), false);
        for (int x : orbit) {
          if (seen[static_cast<size_t>(x)]) continue;
          int len = 0, y = x;
          while (!seen[static_cast<size_t>(y)]) {
            seen[static_cast<size_t>(y)] = true;
            ++len;
            y = prod[static_cast<size_t>(y)];
          }
          degrees.push_back(len);
        }
        int branching = 0;
        for (int deg : degrees) branching += deg - 1;
        if ((a_orbit - branching) % 2 != 0) return false;
        int delta = (a_orbit - branching) / 2;
        if (!detail::orbit_consistent(degrees, delta)) return false;
      }
    }
    return true;
  };

  std::function<bool(Perm&, int)> dfs = [&](Perm& prod, int depth) -> bool {
    if (++nodes_visited > node_budget)
      fail(ErrKind::EnumerationTooLarge, "enumeration budget exceeded");
    if (depth == m_total) {
      if (!perm_is_identity(prod)) return false;
      if (!group_transitive(tuple, d)) return false;
      ++result.examined;
      if (grouping_ok(tuple)) {
        result.feasible = true;
        result.witness = tuple;
        return true;
      }
      return false;
    }
    int remaining = m_total - depth;
    // distance to the identity and parity
    int dist = d - perm_cycle_count(prod);
    if (remaining < dist || (remaining - dist) % 2 != 0) return false;
    // transitivity: remaining transpositions can merge at most `remaining` orbits
    int orbit_count = static_cast<int>(group_orbits(tuple, d).size());
    if (orbit_count - 1 > remaining) return false;

    // global relabeling symmetry: pin the first entry
    size_t first = 0, last = transpositions.size();
    if (depth == 0) last = 1;
    for (size_t ti = first; ti < last; ++ti) {
      tuple.push_back(transpositions[ti]);
      Perm next = perm_compose(transpositions[ti], prod);
      if (dfs(next, depth + 1)) return true;
      tuple.pop_back();
    }
    return false;
  };

  Perm prod = perm_identity(d);
  dfs(prod, 0);
  return result;
}

}  // namespace curvedef
