#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "curvedef/error.hpp"

namespace curvedef {

/// Permutation of {0..d-1}; p[i] is the image of i.
using Perm = std::vector<int>;

inline Perm perm_identity(int d) {
  Perm p(static_cast<size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool perm_is_identity(const Perm& p) {
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

/// a after b: (a o b)[i] = a[b[i]].
inline Perm perm_compose(const Perm& a, const Perm& b) {
  require(a.size() == b.size(), ErrKind::InvalidInput, "permutation size mismatch");
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[static_cast<size_t>(b[i])];
  return r;
}

inline Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[static_cast<size_t>(p[i])] = static_cast<int>(i);
  return r;
}

inline Perm perm_transposition(int d, int a, int b) {
  Perm p = perm_identity(d);
  std::swap(p[static_cast<size_t>(a)], p[static_cast<size_t>(b)]);
  return p;
}

inline bool perm_is_transposition(const Perm& p) {
  int moved = 0;
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) ++moved;
  return moved == 2;
}

inline std::vector<std::vector<int>> perm_cycles(const Perm& p) {
  std::vector<std::vector<int>> cycles;
  std::vector<bool> seen(p.size(), false);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> c;
    int j = static_cast<int>(i);
    while (!seen[static_cast<size_t>(j)]) {
      seen[static_cast<size_t>(j)] = true;
      c.push_back(j);
      j = p[static_cast<size_t>(j)];
    }
    cycles.push_back(std::move(c));
  }
  return cycles;
}

inline int perm_cycle_count(const Perm& p) { return static_cast<int>(perm_cycles(p).size()); }

/// Multiset of cycle lengths, sorted descending.
inline std::vector<int> perm_cycle_type(const Perm& p) {
  std::vector<int> t;
  for (const auto& c : perm_cycles(p)) t.push_back(static_cast<int>(c.size()));
  std::sort(t.rbegin(), t.rend());
  return t;
}

/// Orbits of the subgroup generated by the given permutations.
inline std::vector<std::vector<int>> group_orbits(const std::vector<Perm>& gens, int d) {
  std::vector<int> parent(static_cast<size_t>(d));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (const auto& g : gens)
    for (int i = 0; i < d; ++i) {
      int a = find(i), b = find(g[static_cast<size_t>(i)]);
      if (a != b) parent[static_cast<size_t>(a)] = b;
    }
  std::vector<std::vector<int>> orbits(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) orbits[static_cast<size_t>(find(i))].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& o : orbits)
    if (!o.empty()) out.push_back(std::move(o));
  return out;
}

inline bool group_transitive(const std::vector<Perm>& gens, int d) {
  return group_orbits(gens, d).size() == 1;
}

/// One-line cycle notation, 1-based, fixed points omitted: "(1 2)(3 4)".
inline std::string perm_cycle_string(const Perm& p) {
  std::ostringstream os;
  bool any = false;
  for (const auto& c : perm_cycles(p)) {
    if (c.size() < 2) continue;
    any = true;
    os << "(";
    for (size_t k = 0; k < c.size(); ++k) os << (k ? " " : "") << c[k] + 1;
    os << ")";
  }
  if (!any) return "()";
  return os.str();
}

}  // namespace curvedef
