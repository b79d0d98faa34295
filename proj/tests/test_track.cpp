#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "curvedef/track.hpp"

using namespace curvedef;

namespace {

// w^2 - z
CBiPoly sqrt_curve() { return CBiPoly({CPoly{{0, 0}, {-1, 0}}, CPoly{}, CPoly{{1, 0}}}); }
// w^2 - z^2
CBiPoly two_lines() { return CBiPoly({CPoly{{0, 0}, {0, 0}, {-1, 0}}, CPoly{}, CPoly{{1, 0}}}); }
// w^2 - z^3
CBiPoly cusp() { return CBiPoly({CPoly{{0, 0}, {0, 0}, {0, 0}, {-1, 0}}, CPoly{}, CPoly{{1, 0}}}); }
// w^3 - z^2 w
CBiPoly triple_point() { return CBiPoly({CPoly{}, CPoly{{0, 0}, {0, 0}, {-1, 0}}, CPoly{}, CPoly{{1, 0}}}); }

}  // namespace

TEST_CASE("square-root monodromy around the origin is the two-cycle") {
  RootTrack t = track(sqrt_curve(), ZPath::circle({0, 0}, 1.0));
  REQUIRE(t.permutation.size() == 2);
  CHECK(t.permutation == Perm{1, 0});
  CHECK(t.max_residual <= 1e-9);
}

TEST_CASE("contractible loop avoiding the branch point is trivial") {
  RootTrack t = track(sqrt_curve(), ZPath::circle({3, 0}, 1.0));
  CHECK(perm_is_identity(t.permutation));
}

TEST_CASE("strand matching around the triple point agrees with the explicit-root oracle") {
  // The fiber roots of w^3 - z^2 w are 0 and +-z. Build the expected
  // permutation by evaluating those closed-form roots at 16 sample angles and
  // composing nearest matchings, independently of the tracker.
  const double r = 0.5;
  auto fiber = [&](double ang) {
    Cplx z = r * Cplx{std::cos(ang), std::sin(ang)};
    return std::vector<Cplx>{{0, 0}, z, -z};
  };
  std::vector<Cplx> cur = fiber(0.0);
  // canonical start order (matches the tracker's convention)
  std::vector<Cplx> start = cur;
  std::sort(start.begin(), start.end(), [](Cplx a, Cplx b) {
    if (std::abs(a.real() - b.real()) > 1e-12) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  cur = start;
  for (int k = 1; k <= 16; ++k) {
    auto next = fiber(2.0 * M_PI * k / 16.0);
    std::vector<Cplx> matched(cur.size());
    for (size_t i = 0; i < cur.size(); ++i) {
      size_t best = 0;
      double bd = 1e300;
      for (size_t j = 0; j < next.size(); ++j)
        if (std::abs(next[j] - cur[i]) < bd) {
          bd = std::abs(next[j] - cur[i]);
          best = j;
        }
      matched[i] = next[best];
    }
    cur = matched;
  }
  Perm expected(cur.size());
  for (size_t i = 0; i < cur.size(); ++i) {
    size_t best = 0;
    double bd = 1e300;
    for (size_t j = 0; j < start.size(); ++j)
      if (std::abs(cur[i] - start[j]) < bd) {
        bd = std::abs(cur[i] - start[j]);
        best = j;
      }
    expected[i] = static_cast<int>(best);
  }

  RootTrack t = track(triple_point(), ZPath::circle({0, 0}, r));
  CHECK(t.permutation == expected);
  CHECK(perm_is_identity(t.permutation));  // the three sheets are single-valued
}

TEST_CASE("backwards traversal gives the inverse permutation") {
  for (const CBiPoly& P : {sqrt_curve(), cusp(), triple_point()}) {
    ZPath loop = ZPath::circle({0, 0}, 1.3);
    Perm fwd = track(P, loop).permutation;
    Perm bwd = track(P, loop.reversed()).permutation;
    CHECK(perm_compose(bwd, fwd) == perm_identity(static_cast<int>(fwd.size())));
  }
}

TEST_CASE("concatenation composes permutations") {
  // two half circles of |z| = 1 around the square-root branch point
  ZPath h1, h2;
  for (int k = 0; k < 2; ++k) h1.segs.push_back(PathSeg::arc({0, 0}, 1.0, k * M_PI / 2, (k + 1) * M_PI / 2));
  for (int k = 2; k < 4; ++k) h2.segs.push_back(PathSeg::arc({0, 0}, 1.0, k * M_PI / 2, (k + 1) * M_PI / 2));
  for (const CBiPoly& P : {sqrt_curve(), triple_point()}) {
    Perm p1 = track(P, h1).permutation;
    Perm p2 = track(P, h2).permutation;
    Perm whole = track(P, h1.then(h2)).permutation;
    CHECK(whole == perm_compose(p2, p1));
  }
}

TEST_CASE("boundary monodromy of catalog germs") {
  CHECK(perm_is_identity(boundary_monodromy(two_lines(), 2.0)));
  CHECK(boundary_monodromy(cusp(), 2.0) == Perm{1, 0});
  CHECK(perm_is_identity(boundary_monodromy(triple_point(), 2.0)));
}

TEST_CASE("invalid radius is rejected") {
  // disc roots of w^2 - z^2 + 1/4 are at +-sqrt(1/4)... radius below them fails
  CBiPoly P({CPoly{{0.25, 0}, {0, 0}, {-1, 0}}, CPoly{}, CPoly{{1, 0}}});
  CHECK_THROWS_AS(boundary_monodromy(P, 0.3), Error);
  CHECK_NOTHROW(boundary_monodromy(P, 2.0));
}

TEST_CASE("clearance violation raises path-too-close") {
  ZPath p = ZPath::circle({0, 0}, 0.05);
  p.exclusions = {Cplx{0, 0}};
  p.clearance = 0.1;
  try {
    track(sqrt_curve(), p);
    FAIL("expected path-too-close");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::PathTooClose);
    CHECK(e.has_location());
  }
}

TEST_CASE("csv dump has one row per accepted step") {
  RootTrack t = track(sqrt_curve(), ZPath::circle({0, 0}, 1.0));
  std::ostringstream os;
  write_track_csv(t, os);
  std::string s = os.str();
  size_t rows = std::count(s.begin(), s.end(), '\n');
  CHECK(rows == t.steps.size() + 1);
  CHECK(s.substr(0, 24) == "step,z.re,z.im,w1.re,w1.");
}
