#include <catch2/catch_amalgamated.hpp>

#include "curvedef/hurwitz.hpp"

using namespace curvedef;

namespace {
const BiPoly Z = BiPoly::z();
const BiPoly W = BiPoly::w();

Perm t12() { return perm_transposition(2, 0, 1); }

HurwitzTuple tuple_of(int d, std::vector<Perm> ps) {
  HurwitzTuple t;
  t.d = d;
  t.perms = std::move(ps);
  return t;
}
}  // namespace

TEST_CASE("lassos of the smoothed node: two equal transpositions") {
  VersalFamily fam = t1_basis(WeierstrassPoly(W * W - Z * Z));
  CBiPoly F = CBiPoly::from_exact(W * W - Z * Z + BiPoly(GaussRat(Rat(1, 100))));
  GaugeSolution sol = project_to_family(fam, F);
  FamilyPoint pt = family_point(fam, sol.s);
  HurwitzTuple t = hurwitz_data(fam, pt);
  REQUIRE(t.perms.size() == 2);
  CHECK(t.perms[0] == Perm{1, 0});
  CHECK(t.perms[1] == Perm{1, 0});
  CHECK(perm_is_identity(t.product()));
}

TEST_CASE("generic triple-point fiber: six transpositions, trivial product, transitive") {
  SingularityReport rep = analyze_germ(W * W * W - Z * Z * W);
  VersalFamily fam = t1_basis(WeierstrassPoly(W * W * W - Z * Z * W));
  FamilyPoint maximal = max_nodal_member(fam, rep);
  FamilyPoint generic = smooth_nodes(fam, maximal, {});
  HurwitzTuple t = hurwitz_data(fam, generic);
  REQUIRE(t.perms.size() == 6);
  for (const auto& p : t.perms) CHECK(perm_is_transposition(p));
  CHECK(perm_is_identity(t.product()));
  CHECK(t.transitive());
}

TEST_CASE("fiber without branch points has the empty tuple") {
  VersalFamily fam = t1_basis(WeierstrassPoly(W * W - Z * Z));
  FamilyPoint origin = family_point(fam, std::vector<Cplx>(2, Cplx{0, 0}));
  HurwitzTuple t = hurwitz_data(fam, origin);
  CHECK(t.perms.empty());
  CHECK(perm_is_identity(t.product()));
}

TEST_CASE("lasso product equals the boundary monodromy") {
  SingularityReport rep = analyze_germ(W * W - Z * Z * Z * Z);
  VersalFamily fam = t1_basis(WeierstrassPoly(W * W - Z * Z * Z * Z));
  FamilyPoint maximal = max_nodal_member(fam, rep);
  FamilyPoint generic = smooth_nodes(fam, maximal, {});
  HurwitzTuple t = hurwitz_data(fam, generic);
  Perm boundary = boundary_monodromy(generic.fiber, std::abs(t.basepoint));
  CHECK(t.product() == boundary);
}

TEST_CASE("braid move on commuting equal transpositions is the identity move") {
  HurwitzTuple t = tuple_of(2, {t12(), t12()});
  HurwitzTuple m = braid_move(t, 1);
  CHECK(m.perms == t.perms);
}

TEST_CASE("braid move conjugates as expected") {
  // ((12),(13)) -> ((13),(23)) in one-based cycle labels
  Perm p12 = perm_transposition(3, 0, 1);
  Perm p13 = perm_transposition(3, 0, 2);
  Perm p23 = perm_transposition(3, 1, 2);
  HurwitzTuple t = tuple_of(3, {p12, p13});
  HurwitzTuple m = braid_move(t, 1);
  CHECK(m.perms[0] == p13);
  CHECK(m.perms[1] == p23);
}

TEST_CASE("braid moves preserve product, transitivity and cycle types; inverse undoes") {
  auto rng = std::mt19937_64(2024);
  for (int it = 0; it < 30; ++it) {
    int d = 3 + static_cast<int>(rng() % 2);
    int len = 3 + static_cast<int>(rng() % 4);
    std::vector<Perm> ps;
    for (int k = 0; k < len; ++k) {
      int a = static_cast<int>(rng() % static_cast<unsigned>(d));
      int b = static_cast<int>(rng() % static_cast<unsigned>(d));
      if (a == b) b = (b + 1) % d;
      ps.push_back(perm_transposition(d, std::min(a, b), std::max(a, b)));
    }
    HurwitzTuple t = tuple_of(d, ps);
    int i = 1 + static_cast<int>(rng() % static_cast<unsigned>(len - 1));
    HurwitzTuple m = braid_move(t, i);
    CHECK(m.perms.size() == t.perms.size());
    CHECK(m.product() == t.product());
    CHECK(m.transitive() == t.transitive());
    auto type_multiset = [](const HurwitzTuple& h) {
      std::vector<std::vector<int>> types;
      for (const auto& p : h.perms) types.push_back(perm_cycle_type(p));
      std::sort(types.begin(), types.end());
      return types;
    };
    CHECK(type_multiset(m) == type_multiset(t));
    HurwitzTuple back = braid_move_inverse(m, i);
    CHECK(back.perms == t.perms);
  }
}

TEST_CASE("five of six branch points cannot collapse over the triple point") {
  FeasibilityResult r = collision_feasible(3, 6, {1, 5});
  CHECK_FALSE(r.feasible);
  CHECK(r.examined > 0);  // exhaustion certificate
  FeasibilityResult r2 = collision_feasible(3, 6, {5, 1});
  CHECK_FALSE(r2.feasible);
}

TEST_CASE("total collapse into the triple point is feasible") {
  FeasibilityResult r = collision_feasible(3, 6, {6});
  CHECK(r.feasible);
  REQUIRE(r.witness.size() == 6);
  Perm prod = perm_identity(3);
  for (const auto& q : r.witness) {
    CHECK(perm_is_transposition(q));
    prod = perm_compose(q, prod);
  }
  CHECK(perm_is_identity(prod));
  CHECK(group_transitive(r.witness, 3));
}

TEST_CASE("two separate simple branch points of a node smoothing are feasible") {
  FeasibilityResult r = collision_feasible(2, 2, {1, 1});
  CHECK(r.feasible);
}

TEST_CASE("self-witness: germs with trivial boundary monodromy realize their own collapse") {
  // branching order n over the origin, all collapsed into one point
  CHECK(collision_feasible(2, 2, {2}).feasible);   // node
  CHECK(collision_feasible(2, 4, {4}).feasible);   // tacnode
  CHECK(collision_feasible(2, 6, {6}).feasible);   // higher tangency
  CHECK(collision_feasible(3, 6, {6}).feasible);   // triple point
}

TEST_CASE("partial collapses of the triple point configuration") {
  CHECK(collision_feasible(3, 6, {2, 4}).feasible);
  CHECK(collision_feasible(3, 6, {2, 2, 2}).feasible);
  CHECK(collision_feasible(3, 6, {3, 3}).feasible);
  CHECK(collision_feasible(3, 6, {1, 1, 4}).feasible);
}

TEST_CASE("enumeration budget bounds") {
  CHECK_THROWS_AS(collision_feasible(6, 4, {4}), Error);
  CHECK_THROWS_AS(collision_feasible(3, 9, {9}), Error);
  CHECK_THROWS_AS(collision_feasible(3, 6, {4}), Error);  // split does not sum
}

TEST_CASE("odd transposition counts admit no trivial-product tuple") {
  FeasibilityResult r = collision_feasible(3, 5, {5});
  CHECK_FALSE(r.feasible);
  CHECK(r.examined == 0);
}
