#include <catch2/catch_amalgamated.hpp>

#include "curvedef/resultant.hpp"
#include "helpers.hpp"

using namespace curvedef;

namespace {
const BiPoly z = BiPoly::z();
const BiPoly w = BiPoly::w();

UniPoly uni(std::vector<int> coeffs) {
  std::vector<GaussRat> c;
  c.reserve(coeffs.size());
  for (int v : coeffs) c.emplace_back(v);
  return UniPoly(std::move(c));
}
}  // namespace

TEST_CASE("resultant sign convention regression") {
  // Sylvester of (w^2 - z^2, 2w) with f-rows first is
  //   [1, 0, -z^2; 2, 0, 0; 0, 2, 0],
  // whose determinant expands by hand to -4z^2.
  UniPoly r = resultant_w(w * w - z * z, GaussRat(2) * w);
  CHECK(r == uni({0, 0, -4}));
}

TEST_CASE("resultant of coprime linear polynomials") {
  // Coprime, so a nonzero constant; det([[1,0],[1,-1]]) = -1 under the
  // f-rows-first convention.
  UniPoly r = resultant_w(w, w - 1);
  CHECK(r.degree() == 0);
  CHECK(r == UniPoly(GaussRat(-1)));
}

TEST_CASE("resultant of cubic with its derivative") {
  // Hand reduction of the 5x5 Sylvester matrix gives -4z^6.
  UniPoly r = resultant_w(w * w * w - z * z * w, GaussRat(3) * w * w - z * z);
  CHECK(r == uni({0, 0, 0, 0, 0, 0, -4}));
}

TEST_CASE("resultant matches cofactor-expansion oracle") {
  auto rng = std::mt19937_64(17);
  for (int it = 0; it < 25; ++it) {
    BiPoly f = testing::random_bipoly(rng, 2, 2);
    BiPoly g = testing::random_bipoly(rng, 2, 2);
    CHECK(resultant_w(f, g) == testing::det_cofactor(sylvester_w(f, g)));
  }
}

TEST_CASE("resultant swap antisymmetry") {
  auto rng = std::mt19937_64(19);
  for (int it = 0; it < 30; ++it) {
    int mf = 1 + static_cast<int>(rng() % 3);
    int mg = 1 + static_cast<int>(rng() % 3);
    BiPoly f = testing::random_bipoly(rng, 2, mf);
    BiPoly g = testing::random_bipoly(rng, 2, mg);
    UniPoly lhs = resultant_w(f, g);
    UniPoly rhs = resultant_w(g, f);
    if ((mf * mg) % 2 != 0) rhs = -rhs;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("resultant is multiplicative in the second argument") {
  auto rng = std::mt19937_64(23);
  for (int it = 0; it < 20; ++it) {
    BiPoly f = testing::random_bipoly(rng, 1, 1 + static_cast<int>(rng() % 3));
    BiPoly g = testing::random_bipoly(rng, 1, 1 + static_cast<int>(rng() % 2));
    BiPoly h = testing::random_bipoly(rng, 1, 1 + static_cast<int>(rng() % 2));
    CHECK(resultant_w(f, g * h) == resultant_w(f, g) * resultant_w(f, h));
  }
}

TEST_CASE("resultant with w-constant argument") {
  // Res(a(z), g) = a(z)^deg_w(g)
  BiPoly a = GaussRat(-2) * z;
  BiPoly g = GaussRat(3) * w * w - z * z;
  CHECK(resultant_w(a, g) == uni({0, 0, 4}));
  CHECK_THROWS_AS(resultant_w(BiPoly::zero(), BiPoly::zero()), Error);
}

TEST_CASE("discriminant of quadratic Weierstrass polynomials") {
  // b^2 - 4c for w^2 + b(z)w + c(z)
  CHECK(discriminant_w(WeierstrassPoly(w * w - z * z)) == uni({0, 0, 4}));
  CHECK(discriminant_w(WeierstrassPoly(w * w - z * z * z)) == uni({0, 0, 0, 4}));
}

TEST_CASE("discriminant of the triple point has total vanishing order six") {
  UniPoly d = discriminant_w(WeierstrassPoly(w * w * w - z * z * w));
  CHECK(d == uni({0, 0, 0, 0, 0, 0, 4}));
  CHECK(d.ord0() == 6);
}

TEST_CASE("discriminant rejects low degree") {
  CHECK_THROWS_AS(discriminant_w(WeierstrassPoly(w - z)), Error);
}
