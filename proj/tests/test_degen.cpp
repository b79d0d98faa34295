#include <catch2/catch_amalgamated.hpp>

#include "curvedef/degen.hpp"

using namespace curvedef;

namespace {
const BiPoly Z = BiPoly::z();
const BiPoly W = BiPoly::w();

BiPoly zpow(int k) {
  BiPoly p(1);
  for (int i = 0; i < k; ++i) p *= Z;
  return p;
}
BiPoly wpow(int k) {
  BiPoly p(1);
  for (int i = 0; i < k; ++i) p *= W;
  return p;
}

struct Setup {
  SingularityReport report;
  VersalFamily fam;
};

Setup setup(const BiPoly& germ) {
  Setup s{analyze_germ(germ), t1_basis(WeierstrassPoly(germ))};
  return s;
}

FamilyPoint generic_member(const Setup& s) {
  FamilyPoint maximal = max_nodal_member(s.fam, s.report);
  return smooth_nodes(s.fam, maximal, {});
}
}  // namespace

TEST_CASE("cusp family: one coefficient drive parks a branch point at the origin") {
  Setup s = setup(W * W - zpow(3));
  FamilyPoint pt = generic_member(s);
  StratumState st = make_stratum_state(s.fam, pt);
  CHECK(st.nu == 0);
  CHECK(st.k == 0);
  StratumState st1 = enter_stratum(s.fam, st);
  CHECK(st1.k == 1);
  FiberReport rep = fiber_analyze(s.fam, st1.pt);
  // one branch point at the origin, curve still smooth at the axis
  CHECK(rep.branching_order_at({0, 0}, 1e-6) == 1);
  CHECK(rep.nu == 0);
  bool has_origin_bp = false;
  for (const auto& bp : rep.branch_points)
    if (std::abs(bp.z) < 1e-8) has_origin_bp = true;
  CHECK(has_origin_bp);
  // smooth at the axis: the branch point is a fold, not a singular point
  CBiPoly Pz = st1.pt.fiber.deriv_z();
  for (const auto& bp : rep.branch_points)
    if (std::abs(bp.z) < 1e-8) {
      // the critical fiber point above z = 0
      RootSet fr = roots(st1.pt.fiber.fiber(bp.z), 1e-3);
      for (size_t i = 0; i < fr.points.size(); ++i)
        if (fr.multiplicities[i] >= 2) CHECK(std::abs(Pz.eval(bp.z, fr.points[i])) > 1e-6);
    }
}

TEST_CASE("node family: the second drive recreates the node on the axis") {
  Setup s = setup(W * W - zpow(2));
  FamilyPoint pt = generic_member(s);
  StratumState st = make_stratum_state(s.fam, pt);
  StratumState st1 = enter_stratum(s.fam, st);
  REQUIRE(st1.last_event.empty());
  CHECK(st1.k == 1);
  StratumState st2 = enter_stratum(s.fam, st1);
  // both branch points collapse at the origin: the node reappears there
  CHECK(st2.last_event == "node-on-axis");
  // harvest produces a validated one-node member
  FamilyPoint nodal = harvest_node(s.fam, st2);
  FiberReport rep = fiber_analyze(s.fam, nodal);
  CHECK(rep.nu == 1);
  CHECK(rep.classification == FiberClass::NodalGeneric);
}

TEST_CASE("tacnode family: chain from a one-node member to two nodes") {
  Setup s = setup(W * W - zpow(4));
  FamilyPoint maximal = max_nodal_member(s.fam, s.report);
  FamilyPoint one = smooth_nodes(s.fam, maximal, {0});
  StratumState st = make_stratum_state(s.fam, one);
  REQUIRE(st.nu == 1);
  int guard = 0;
  while (st.last_event.empty() && guard++ < 4) st = enter_stratum(s.fam, st);
  REQUIRE_FALSE(st.last_event.empty());
  CHECK(st.k <= s.fam.d);  // terminal index within the degree bound
  FamilyPoint two = harvest_node(s.fam, st);
  FiberReport rep = fiber_analyze(s.fam, two);
  CHECK(rep.nu == 2);
  CHECK(static_cast<int>(rep.branch_points.size()) == s.fam.n - 4);
}

TEST_CASE("triple point family from two nodes terminates within the degree bound") {
  Setup s = setup(wpow(3) - zpow(2) * W);
  FamilyPoint maximal = max_nodal_member(s.fam, s.report);
  FamilyPoint two = smooth_nodes(s.fam, maximal, {0, 1});
  StratumState st = make_stratum_state(s.fam, two);
  REQUIRE(st.nu == 2);
  int guard = 0;
  while (st.last_event.empty() && guard++ < 4) st = enter_stratum(s.fam, st);
  REQUIRE_FALSE(st.last_event.empty());
  CHECK(st.k <= s.fam.d);
  FamilyPoint three = harvest_node(s.fam, st);
  CHECK(fiber_analyze(s.fam, three).nu == 3);
}

TEST_CASE("full verification chain on the node germ") {
  Setup s = setup(W * W - zpow(2));
  Certificate cert = verify_main_theorem(s.fam, s.report, 0);
  CHECK(cert.success);
  CHECK(cert.delta == 1);
  REQUIRE(!cert.stages.empty());
  CHECK(cert.stages.back().type == "harvest");
  CHECK(cert.stages.back().nu == 1);
}

TEST_CASE("full verification chain on the tacnode with replay") {
  Setup s = setup(W * W - zpow(4));
  Certificate cert = verify_main_theorem(s.fam, s.report, 0);
  REQUIRE(cert.success);
  CHECK(cert.stages.back().nu == 2);
  // every stratum stage stays within the degree bound
  for (const auto& st : cert.stages)
    if (st.type == "stratum") CHECK(st.k <= s.fam.d);
  // replay: re-running the classifier on each recorded member reproduces the
  // recorded invariants
  for (const auto& st : cert.stages) {
    FamilyPoint pt = family_point(s.fam, st.s);
    FiberReport rep = fiber_analyze(s.fam, pt);
    CHECK(rep.nu == st.nu);
    CHECK(rep.chi == st.chi);
    REQUIRE(rep.branch_points.size() + 0 == st.branch_points.size());
    for (const auto& bp : rep.branch_points) {
      double best = 1e300;
      for (const auto& rec : st.branch_points) best = std::min(best, std::abs(bp.z - rec));
      CHECK(best < 1e-6);
    }
  }
}

TEST_CASE("invalid nu_start is rejected") {
  Setup s = setup(W * W - zpow(2));
  CHECK_THROWS_AS(verify_main_theorem(s.fam, s.report, 1), Error);
}
