#include <catch2/catch_amalgamated.hpp>

#include "curvedef/polymatrix.hpp"
#include "helpers.hpp"

using namespace curvedef;

namespace {
UniPoly zpow(int k) { return UniPoly::monomial(GaussRat(1), k); }

void check_smith_contract(const PolyMatrix& m) {
  SmithResult s = smith_normal_form(m);
  const int n = m.rows();
  // U*M*V = D exactly
  CHECK(s.U * m * s.V == s.D);
  // inverses really invert
  CHECK(s.U * s.Uinv == PolyMatrix::identity(n));
  CHECK(s.V * s.Vinv == PolyMatrix::identity(n));
  // diagonal, monic, divisibility chain
  UniPoly prod = UniPoly::one();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (i != j) CHECK(s.D.at(i, j).is_zero());
    CHECK(s.D.at(i, i).lead() == GaussRat(1));
    if (i + 1 < n) CHECK((s.D.at(i + 1, i + 1) % s.D.at(i, i)).is_zero());
    prod *= s.D.at(i, i);
  }
  // product of invariant factors = det up to a nonzero constant
  UniPoly dm = det(m);
  REQUIRE(!dm.is_zero());
  CHECK(prod.degree() == dm.degree());
  CHECK(dm == dm.lead() * prod);
}
}  // namespace

TEST_CASE("smith normal form of an already diagonal matrix") {
  PolyMatrix m(2, 2);
  m.at(0, 0) = zpow(1);
  m.at(1, 1) = zpow(1);
  SmithResult s = smith_normal_form(m);
  CHECK(s.D.at(0, 0) == zpow(1));
  CHECK(s.D.at(1, 1) == zpow(1));
  CHECK(s.U == PolyMatrix::identity(2));
  CHECK(s.V == PolyMatrix::identity(2));
}

TEST_CASE("smith normal form of diag(1, z^2)") {
  PolyMatrix m(2, 2);
  m.at(0, 0) = UniPoly::one();
  m.at(1, 1) = zpow(2);
  SmithResult s = smith_normal_form(m);
  CHECK(s.D.at(0, 0) == UniPoly::one());
  CHECK(s.D.at(1, 1) == zpow(2));
}

TEST_CASE("smith normal form of the multiplication matrix [[0,2z^2],[2,0]]") {
  // Multiplication by 2w on the basis {1, w} of Q(i)[z][w]/(w^2 - z^2):
  // diagonalizes to diag(1, z^2) after monic normalization.
  PolyMatrix m(2, 2);
  m.at(0, 1) = GaussRat(2) * zpow(2);
  m.at(1, 0) = UniPoly(GaussRat(2));
  SmithResult s = smith_normal_form(m);
  CHECK(s.D.at(0, 0) == UniPoly::one());
  CHECK(s.D.at(1, 1) == zpow(2));
  check_smith_contract(m);
}

TEST_CASE("smith normal form rejects singular input with computed rank") {
  PolyMatrix m(2, 2);
  m.at(0, 0) = zpow(1);
  m.at(0, 1) = zpow(2);
  m.at(1, 0) = zpow(2);
  m.at(1, 1) = zpow(3);  // row2 = z*row1
  try {
    smith_normal_form(m);
    FAIL("expected rank-deficient error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::RankDeficient);
    CHECK(e.rank() == 1);
  }
}

TEST_CASE("smith normal form contract on random nonsingular matrices") {
  auto rng = std::mt19937_64(29);
  int done = 0;
  while (done < 15) {
    int n = 2 + static_cast<int>(rng() % 2);
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = testing::random_unipoly(rng, static_cast<int>(rng() % 3), 2);
    if (det(m).is_zero()) continue;
    check_smith_contract(m);
    ++done;
  }
}

TEST_CASE("determinant by interpolation matches cofactor oracle") {
  auto rng = std::mt19937_64(31);
  for (int it = 0; it < 15; ++it) {
    int n = 2 + static_cast<int>(rng() % 3);
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = testing::random_unipoly(rng, 2, 2);
    CHECK(det(m) == testing::det_cofactor(m));
  }
}
