#include <catch2/catch_amalgamated.hpp>

#include "curvedef/singularity.hpp"

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
}  // namespace

TEST_CASE("normalize_germ keeps an already monic germ") {
  NormalizedGerm g = normalize_germ(W * W - Z * Z);
  CHECK(g.P.base() == W * W - Z * Z);
  CHECK(g.shear == GaussRat(0));
  CHECK(g.truncation == 0);
}

TEST_CASE("normalize_germ rescales a constant leading coefficient") {
  NormalizedGerm g = normalize_germ(GaussRat(2) * W * W - GaussRat(2) * zpow(3));
  CHECK(g.P.base() == W * W - zpow(3));
}

TEST_CASE("normalize_germ divides by a unit leading coefficient as a series") {
  // (1+z) w^2 - z^3: dividing by the unit gives w^2 - z^3(1 - z + z^2 - ...)
  BiPoly F = Z * W * W + W * W - zpow(3);
  NormalizedGerm g = normalize_germ(F);
  CHECK(g.P.base().is_monic_in_w());
  CHECK(g.truncation > 0);
  // residual check: (1+z) * P - F vanishes up to the truncation window
  BiPoly resid = (Z + BiPoly(1)) * g.P.base() - F;
  for (const auto& [key, c] : resid.terms()) CHECK(key.first > g.truncation);
  // the germ invariants are unaffected by the unit
  CHECK(t1_length(g.P) == 3);
}

TEST_CASE("normalize_germ shears away a vanishing leading coefficient") {
  // z*w: the projection is degenerate until z -> z + lambda w
  NormalizedGerm g = normalize_germ(Z * W);
  CHECK(g.P.base().is_monic_in_w());
  CHECK(!(g.shear == GaussRat(0)));
  CHECK(g.P.degree() == 2);
  CHECK(t1_length(g.P) == 2);  // still a node (n = 2)
}

TEST_CASE("normalize_germ rejects germs with repeated factors") {
  CHECK_THROWS_AS(normalize_germ(W * W - GaussRat(2) * Z * W + Z * Z), Error);  // (w-z)^2
  CHECK_THROWS_AS(normalize_germ(W * W), Error);
}

TEST_CASE("t1 length of the catalog germs") {
  CHECK(t1_length(WeierstrassPoly(W * W - zpow(2))) == 2);
  CHECK(t1_length(WeierstrassPoly(W * W - zpow(3))) == 3);
  CHECK(t1_length(WeierstrassPoly(W * W - zpow(4))) == 4);
  CHECK(t1_length(WeierstrassPoly(wpow(3) - zpow(2) * W)) == 6);
  CHECK(t1_length(WeierstrassPoly(wpow(3) - zpow(4))) == 8);
}

TEST_CASE("t1 length total over the disc counts the non-origin roots") {
  // w^2 - z^3 + z^2/2: disc = 4(z^3 - z^2/2) has a double zero at 0 and a simple one at 1/2
  BiPoly F = W * W - zpow(3) + GaussRat(Rat(1, 2)) * zpow(2);
  WeierstrassPoly P(F);
  CHECK(t1_length(P, true) == 2);
  CHECK(t1_length(P, false) == 3);
}

TEST_CASE("branch counts of the catalog germs") {
  CHECK(branch_count(WeierstrassPoly(W * W - zpow(3))) == 1);
  CHECK(branch_count(WeierstrassPoly(W * W - zpow(2))) == 2);
  CHECK(branch_count(WeierstrassPoly(wpow(3) - zpow(2) * W)) == 3);
  CHECK(branch_count(WeierstrassPoly(W * W - zpow(4))) == 2);
  CHECK(branch_count(WeierstrassPoly(wpow(3) - zpow(4))) == 1);
}

TEST_CASE("milnor length of the catalog germs") {
  CHECK(milnor_length(WeierstrassPoly(W * W - zpow(2))) == 1);
  CHECK(milnor_length(WeierstrassPoly(W * W - zpow(3))) == 2);
  CHECK(milnor_length(WeierstrassPoly(W * W - zpow(4))) == 3);
  CHECK(milnor_length(WeierstrassPoly(wpow(3) - zpow(2) * W)) == 4);
  CHECK(milnor_length(WeierstrassPoly(wpow(3) - zpow(4))) == 6);
}

TEST_CASE("delta of the node, triple point and tacnode") {
  SingularityReport a1 = analyze_germ(W * W - zpow(2));
  CHECK(a1.delta == 1);
  SingularityReport d4 = analyze_germ(wpow(3) - zpow(2) * W);
  CHECK(d4.delta == 3);
  SingularityReport a3 = analyze_germ(W * W - zpow(4));
  CHECK(a3.delta == 2);
}

TEST_CASE("full reports satisfy n = d - b + 2 delta on the catalog") {
  std::vector<BiPoly> germs = {
      W * W - zpow(2), W * W - zpow(3), W * W - zpow(4),
      W * W - zpow(5), W * W - zpow(6),
      wpow(3) - zpow(2) * W, wpow(3) - zpow(4),
  };
  for (const auto& g : germs) {
    SingularityReport r = analyze_germ(g);
    CHECK(r.n == r.d - r.b + 2 * r.delta);
  }
}

TEST_CASE("invariants are stable under random shears of the input") {
  BiPoly base = wpow(3) - zpow(2) * W;
  SingularityReport r0 = analyze_germ(base);
  for (Rat lam : {Rat(1, 3), Rat(-1, 2)}) {
    BiPoly sheared = base.shear_z(GaussRat(lam));
    SingularityReport r = analyze_germ(sheared);
    CHECK(r.n == r0.n);
    CHECK(r.b == r0.b);
    CHECK(r.mu == r0.mu);
    CHECK(r.delta == r0.delta);
  }
}

TEST_CASE("puiseux branches feed the report") {
  SingularityReport r = analyze_germ(W * W - zpow(3));
  REQUIRE(r.branches.size() == 1);
  CHECK(r.branches[0].ram == 2);
  CHECK(r.d == 2);
  CHECK(r.n == 3);
  CHECK(r.b == 1);
  CHECK(r.mu == 2);
  CHECK(r.delta == 1);
}
