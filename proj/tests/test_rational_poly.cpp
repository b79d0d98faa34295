#include <catch2/catch_amalgamated.hpp>

#include "curvedef/bipoly.hpp"
#include "curvedef/unipoly.hpp"
#include "helpers.hpp"

using namespace curvedef;

TEST_CASE("GaussRat field arithmetic is exact") {
  GaussRat a(Rat(1, 3), Rat(1, 2));
  GaussRat b(Rat(2), Rat(-1, 6));
  CHECK((a + b) == GaussRat(Rat(7, 3), Rat(1, 3)));
  CHECK((a * b).re == Rat(1, 3) * Rat(2) + Rat(1, 2) * Rat(1, 6));
  CHECK(a * a.inv() == GaussRat(1));
  CHECK(GaussRat::i() * GaussRat::i() == GaussRat(-1));
  CHECK_THROWS_AS(GaussRat(0).inv(), Error);
}

TEST_CASE("UniPoly basic operations") {
  // p = z^2 - 1, q = z - 1
  UniPoly p(std::vector<GaussRat>{GaussRat(-1), GaussRat(0), GaussRat(1)});
  UniPoly q(std::vector<GaussRat>{GaussRat(-1), GaussRat(1)});
  auto [quo, rem] = p.divmod(q);
  CHECK(rem.is_zero());
  CHECK(quo == UniPoly(std::vector<GaussRat>{GaussRat(1), GaussRat(1)}));
  CHECK(p.derivative() == UniPoly(std::vector<GaussRat>{GaussRat(0), GaussRat(2)}));
  CHECK(p.ord0() == 0);
  CHECK(UniPoly::monomial(GaussRat(3), 4).ord0() == 4);
  CHECK(poly_gcd(p, q) == q.monic());
}

TEST_CASE("UniPoly divmod round-trip on random inputs") {
  auto rng = std::mt19937_64(7);
  for (int it = 0; it < 50; ++it) {
    UniPoly a = testing::random_unipoly(rng, 6);
    UniPoly b = testing::random_unipoly(rng, 3);
    if (b.is_zero()) continue;
    auto [q, r] = a.divmod(b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
  }
}

TEST_CASE("squarefree decomposition") {
  // (z-1)^2 * (z+2)
  UniPoly f = UniPoly(std::vector<GaussRat>{GaussRat(-1), GaussRat(1)});
  UniPoly g = UniPoly(std::vector<GaussRat>{GaussRat(2), GaussRat(1)});
  UniPoly p = f * f * g;
  auto parts = squarefree_decomposition(p);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == g.monic());
  CHECK(parts[1] == f.monic());
}

TEST_CASE("BiPoly ring operations") {
  BiPoly z = BiPoly::z(), w = BiPoly::w();
  // mul(w - z, w + z) = w^2 - z^2
  CHECK((w - z) * (w + z) == w * w - z * z);
  // derivative_w(w^2 - z^3) = 2w
  BiPoly p = w * w - z * z * z;
  CHECK(p.derivative_w() == GaussRat(2) * w);
  CHECK(p.derivative_z() == GaussRat(-3) * z * z);
  CHECK(p.degree_w() == 2);
  CHECK(p.degree_z() == 3);
}

TEST_CASE("compose_shift expands exactly") {
  BiPoly z = BiPoly::z(), w = BiPoly::w();
  // compose_shift(w^2, g = z) = w^2 + 2zw + z^2
  CHECK((w * w).compose_shift(z) == w * w + GaussRat(2) * z * w + z * z);
  // identity shift
  BiPoly p = w * w * w - z * z * w + GaussRat(Rat(1, 2)) * z;
  CHECK(p.compose_shift(BiPoly::zero()) == p);
}

TEST_CASE("compose_shift composes for constant shifts") {
  auto rng = std::mt19937_64(11);
  for (int it = 0; it < 20; ++it) {
    BiPoly p = testing::random_bipoly(rng, 2, 3);
    GaussRat a = testing::random_gaussrat(rng), b = testing::random_gaussrat(rng);
    BiPoly lhs = p.compose_shift(BiPoly(a)).compose_shift(BiPoly(b));
    BiPoly rhs = p.compose_shift(BiPoly(a + b));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("w_coeffs round-trips") {
  auto rng = std::mt19937_64(13);
  for (int it = 0; it < 20; ++it) {
    BiPoly p = testing::random_bipoly(rng, 3, 2);
    CHECK(BiPoly::from_w_coeffs(p.w_coeffs()) == p);
  }
}

TEST_CASE("shear_z moves the projection direction") {
  BiPoly z = BiPoly::z(), w = BiPoly::w();
  // z*w under z -> z + w picks up a w^2 term with unit coefficient.
  BiPoly p = z * w;
  BiPoly q = p.shear_z(GaussRat(1));
  CHECK(q == z * w + w * w);
  CHECK(q.lead_w().degree() == 0);
}

TEST_CASE("WeierstrassPoly validates monicity") {
  BiPoly z = BiPoly::z(), w = BiPoly::w();
  CHECK_NOTHROW(WeierstrassPoly(w * w - z * z));
  CHECK_THROWS_AS(WeierstrassPoly(GaussRat(2) * w * w - z), Error);
  CHECK_THROWS_AS(WeierstrassPoly(z * w * w + w * w - z), Error);
}
