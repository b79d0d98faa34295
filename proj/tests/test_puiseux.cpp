#include <catch2/catch_amalgamated.hpp>

#include "curvedef/puiseux.hpp"

using namespace curvedef;

namespace {
const BiPoly Z = BiPoly::z();
const BiPoly W = BiPoly::w();

int total_ram(const std::vector<PuiseuxBranch>& bs) {
  int t = 0;
  for (const auto& b : bs) t += b.ram;
  return t;
}

bool has_branch(const std::vector<PuiseuxBranch>& bs, int ram, const CPoly& phi, double tol = 1e-9) {
  for (const auto& b : bs) {
    if (b.ram != ram) continue;
    CPoly a = b.phi, c = phi;
    a.resize(std::max(a.size(), c.size()), Cplx{0, 0});
    c.resize(a.size(), Cplx{0, 0});
    double diff = 0;
    for (size_t k = 0; k < a.size(); ++k) diff = std::max(diff, std::abs(a[k] - c[k]));
    if (diff < tol) return true;
  }
  return false;
}
}  // namespace

TEST_CASE("cusp has one branch (zeta^2, zeta^3)") {
  auto bs = newton_puiseux(WeierstrassPoly(W * W - Z * Z * Z), 10);
  REQUIRE(bs.size() == 1);
  CHECK(bs[0].ram == 2);
  CPoly expect(4, Cplx{0, 0});
  expect[3] = Cplx{1, 0};
  CHECK(has_branch(bs, 2, expect));
}

TEST_CASE("node has two unramified branches +-zeta") {
  auto bs = newton_puiseux(WeierstrassPoly(W * W - Z * Z), 10);
  REQUIRE(bs.size() == 2);
  CHECK(total_ram(bs) == 2);
  CHECK(has_branch(bs, 1, CPoly{{0, 0}, {1, 0}}));
  CHECK(has_branch(bs, 1, CPoly{{0, 0}, {-1, 0}}));
}

TEST_CASE("triple point splits into 0 and +-zeta") {
  auto bs = newton_puiseux(WeierstrassPoly(W * W * W - Z * Z * W), 8);
  REQUIRE(bs.size() == 3);
  CHECK(total_ram(bs) == 3);
  CHECK(has_branch(bs, 1, CPoly{}));
  CHECK(has_branch(bs, 1, CPoly{{0, 0}, {1, 0}}));
  CHECK(has_branch(bs, 1, CPoly{{0, 0}, {-1, 0}}));
}

TEST_CASE("tacnode splits into +-zeta^2") {
  auto bs = newton_puiseux(WeierstrassPoly(W * W - Z * Z * Z * Z), 8);
  REQUIRE(bs.size() == 2);
  CHECK(has_branch(bs, 1, CPoly{{0, 0}, {0, 0}, {1, 0}}));
  CHECK(has_branch(bs, 1, CPoly{{0, 0}, {0, 0}, {-1, 0}}));
}

TEST_CASE("E6-type germ is one threefold-ramified branch") {
  auto bs = newton_puiseux(WeierstrassPoly(W * W * W - Z * Z * Z * Z), 12);
  REQUIRE(bs.size() == 1);
  CHECK(bs[0].ram == 3);
  CPoly expect(5, Cplx{0, 0});
  expect[4] = Cplx{1, 0};
  // conjugate representative: leading coefficient is some cube root of unity
  bool ok = false;
  for (int k = 0; k < 3; ++k) {
    Cplx rot = std::exp(Cplx{0, 2.0 * M_PI * k / 3.0});
    CPoly e = expect;
    e[4] *= rot;
    if (has_branch(bs, 3, e)) ok = true;
  }
  CHECK(ok);
}

TEST_CASE("branch residuals vanish to high order on sample points") {
  std::vector<BiPoly> germs = {
      W * W - Z * Z * Z,
      W * W - Z * Z,
      W * W * W - Z * Z * W,
      W * W - Z * Z * Z * Z,
      W * W * W - Z * Z * Z * Z,
      // a non-quasihomogeneous example
      (W - Z) * (W + Z) * W + Z * Z * Z * Z * Z,
  };
  for (const auto& g : germs) {
    WeierstrassPoly P(g);
    CBiPoly cp = CBiPoly::from_exact(g);
    auto bs = newton_puiseux(P, 14);
    REQUIRE(!bs.empty());
    for (const auto& b : bs) CHECK(branch_residual(cp, b, 0.1) < 1e-10);
  }
}

TEST_CASE("analytic branch of a smooth vertical-tangent germ") {
  // w^2 - z: single branch (zeta^2, zeta)
  auto bs = newton_puiseux(WeierstrassPoly(W * W - Z), 6);
  REQUIRE(bs.size() == 1);
  CHECK(bs[0].ram == 2);
  CHECK(has_branch(bs, 2, CPoly{{0, 0}, {1, 0}}));
}

TEST_CASE("order cap is enforced") {
  CHECK_THROWS_AS(newton_puiseux(WeierstrassPoly(W * W - Z * Z * Z), 41), Error);
}

TEST_CASE("non-origin germ is rejected") {
  CHECK_THROWS_AS(newton_puiseux(WeierstrassPoly(W * W - Z - 1), 6), Error);
}
