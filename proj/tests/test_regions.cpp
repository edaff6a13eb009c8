// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "improj/formulas.hpp"
#include "improj/oracle.hpp"
#include "improj/rand.hpp"

using namespace improj;

namespace {

MultiPoly P2(const std::string& s) { return parse_poly(s, 2); }

std::vector<Rat> pt(long a, long b, long c, long d) {
  Rat x(a, b), y(c, d);
  x.canonicalize();
  y.canonicalize();
  return {x, y};
}

}  // namespace

TEST_CASE("two parallel lines for z1^2 + gamma with positive gamma") {
  RegionResult rr = region_of_conic_poly(P2("z1^2 + 1"));
  REQUIRE_FALSE(rr.delegated);
  CHECK(rr.region.member({Rat(1), Rat(7)}));
  CHECK(rr.region.member({Rat(-1), Rat(-3)}));
  CHECK_FALSE(rr.region.member({Rat(0), Rat(0)}));
  CHECK_FALSE(rr.region.member({Rat(1, 2), Rat(0)}));
}

TEST_CASE("the quadrant band of z1 z2 + 2i keeps everything but the origin") {
  RegionResult rr = region_of_conic_poly(P2("z1*z2 + 2i"));
  REQUIRE_FALSE(rr.delegated);
  CHECK(rr.region.member({Rat(1), Rat(1)}));       // y1 y2 = 1 <= |gamma|
  CHECK_FALSE(rr.region.member({Rat(0), Rat(0)})); // removed point
  CHECK(rr.region.member({Rat(1), Rat(0)}));       // axis minus origin stays
  CHECK_FALSE(rr.region.member({Rat(2), Rat(2)})); // beyond the band
}

TEST_CASE("the 2b segment case matches the documented encoding") {
  // alpha = i, gamma = -i: complement is the open segment y2=0, y1^2 < 4
  RegionResult rr = region_of_conic_poly(P2("z1*z2 - i*z2^2 - i"));
  REQUIRE_FALSE(rr.delegated);
  CHECK_FALSE(rr.region.member({Rat(1), Rat(0)}));
  CHECK_FALSE(rr.region.member({Rat(0), Rat(0)}));
  CHECK(rr.region.member({Rat(2), Rat(0)}));   // closed endpoint included
  CHECK(rr.region.member({Rat(3), Rat(0)}));
  CHECK(rr.region.member({Rat(1), Rat(1, 9)}));
}

TEST_CASE("class 2c.2 is delegated to the oracle") {
  RegionResult rr = region_of_conic_poly(P2("z1^2 + i*z2^2 + z2"));
  CHECK(rr.delegated);
  CHECK_FALSE(rr.reason.empty());
}

TEST_CASE("membership pins: unit circle complement and full space") {
  RegionResult circle = region_of_conic_poly(P2("z1^2 + z2^2 + 1"));
  REQUIRE_FALSE(circle.delegated);
  CHECK_FALSE(circle.region.member({Rat(0), Rat(0)}));
  CHECK(circle.region.member({Rat(1), Rat(0)}));
  CHECK(Region::full(2).member({Rat(123), Rat(-456)}));
}

TEST_CASE("formula equals oracle on sampled points for mixed cases") {
  std::mt19937_64 rng(79);
  const char* reps[] = {"z1^2 + i",       "z1^2 + z2",
                        "z1*z2 - 1",      "z1^2 - 2i*z1*z2 - z2^2 + i",
                        "z1*z2 - i*z2^2 + 3", "z1^2 + z2^2 + i"};
  for (const char* text : reps) {
    MultiPoly p = P2(text);
    RegionResult rr = region_of_conic_poly(p);
    REQUIRE_FALSE(rr.delegated);
    for (int t = 0; t < 250; ++t) {
      std::vector<Rat> y = {random_rat(rng, 128, 16), random_rat(rng, 128, 16)};
      CHECK(rr.region.member(y) == member_conic_exact(p, y));
    }
  }
}

TEST_CASE("complements of region closures are midpoint convex") {
  std::mt19937_64 rng(83);
  const char* reps[] = {"z1^2 + 2i*z2", "z1^2 + z2^2 + 1", "z1^2 + i"};
  for (const char* text : reps) {
    RegionResult rr = region_of_conic_poly(P2(text));
    REQUIRE_FALSE(rr.delegated);
    int found = 0;
    for (int t = 0; t < 4000 && found < 300; ++t) {
      std::vector<Rat> a = {random_rat(rng, 24, 12), random_rat(rng, 24, 12)};
      std::vector<Rat> b = {random_rat(rng, 24, 12), random_rat(rng, 24, 12)};
      if (rr.region.member_closed(a) || rr.region.member_closed(b)) continue;
      ++found;
      std::vector<Rat> mid = {(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
      CHECK_FALSE(rr.region.member_closed(mid));
    }
    CHECK(found > 0);
  }
}

TEST_CASE("conjugation reflects the region") {
  std::mt19937_64 rng(89);
  const char* reps[] = {"z1^2 + 2i*z2", "z1*z2 + 2i", "z1^2 + z2^2 + i"};
  for (const char* text : reps) {
    MultiPoly p = P2(text);
    MultiPoly pc = p.conj();
    for (int t = 0; t < 150; ++t) {
      std::vector<Rat> y = {random_rat(rng, 64, 8), random_rat(rng, 64, 8)};
      std::vector<Rat> ny = {-y[0], -y[1]};
      CHECK(member_conic_exact(pc, y) == member_conic_exact(p, ny));
    }
  }
}

TEST_CASE("odd-degree full-plane criterion") {
  FullPlaneReport a = full_plane_odd_degree_check(P2("(z1 - i*z2)^3 + 1"));
  CHECK(a.full_plane);
  FullPlaneReport b = full_plane_odd_degree_check(P2("z1^3 + z2^3 - 1"));
  CHECK_FALSE(b.full_plane);  // the initial form has the real root (-1:1)
  FullPlaneReport c = full_plane_odd_degree_check(P2("z1^2 + z2^2 + 1"));
  CHECK_FALSE(c.full_plane);  // even degree

  // factored route: an even-degree product with an odd non-real-root factor
  MultiPoly f1 = P2("(z1 - i*z2)^3 + 1");
  MultiPoly f2 = P2("z1 + z2");
  FullPlaneReport d = full_plane_odd_degree_check(f1 * f2, {f1, f2});
  CHECK(d.full_plane);
  CHECK(d.witness_factor == 0);
  CHECK_THROWS_AS(full_plane_odd_degree_check(f1, {f1, f2}), Error);
}

TEST_CASE("hyperbolic-initial quadric regions in three variables") {
  auto region_of = [](const std::string& text) {
    NdNormalFormResult nf = normalize_quadric_nd(parse_poly(text, 3));
    REQUIRE(nf.exact);
    return region_quadric_hyperbolic_nd(nf).pulled_back(
        nf.transform->inverse());
  };
  Region g1 = region_of("z1^2 + z2^2 - z3^2 + 1");
  CHECK(g1.member({Rat(2), Rat(0), Rat(1)}));
  CHECK_FALSE(g1.member({Rat(0), Rat(0), Rat(1)}));
  CHECK(g1.member({Rat(0), Rat(0), Rat(0)}));  // the added subspace point

  Region gm1 = region_of("z1^2 + z2^2 - z3^2 - 1");
  CHECK(gm1.member({Rat(0), Rat(0), Rat(1)}));   // y3^2 <= 1
  CHECK_FALSE(gm1.member({Rat(0), Rat(0), Rat(2)}));

  Region gi = region_of("z1^2 + z2^2 - z3^2 + i");
  CHECK(gi.member({Rat(0), Rat(0), Rat(1, 2)}));   // 1/4 <= 1/2
  CHECK_FALSE(gi.member({Rat(0), Rat(0), Rat(0)}));  // removed subspace
  CHECK_FALSE(gi.member({Rat(0), Rat(0), Rat(1)}));  // 1 > 1/2

  // case (a): the homogeneous cone complement
  NdNormalFormResult na = normalize_quadric_nd(parse_poly("z1^2 + z2^2 - z3^2", 3));
  Region ga = region_quadric_hyperbolic_nd(na).pulled_back(
      na.transform->inverse());
  CHECK(ga.member({Rat(1), Rat(0), Rat(1)}));
  CHECK(ga.member({Rat(2), Rat(0), Rat(1)}));
  CHECK_FALSE(ga.member({Rat(0), Rat(0), Rat(1)}));

  // case (b): the punctured-axis set
  NdNormalFormResult nb = normalize_quadric_nd(parse_poly("z1^2 + z2^2 - z3^2 + z4", 4));
  Region gb = region_quadric_hyperbolic_nd(nb).pulled_back(
      nb.transform->inverse());
  CHECK(gb.member({Rat(1), Rat(0), Rat(0), Rat(5)}));
  CHECK(gb.member({Rat(0), Rat(0), Rat(0), Rat(0)}));
  CHECK_FALSE(gb.member({Rat(0), Rat(0), Rat(0), Rat(5)}));

  // rank-one case (c): a parabola cylinder, not the full space
  NdNormalFormResult nc = normalize_quadric_nd(parse_poly("z1^2 + i*z3", 3));
  Region gc = region_quadric_hyperbolic_nd(nc).pulled_back(
      nc.transform->inverse());
  CHECK(gc.member({Rat(2), Rat(0), Rat(1)}));    // y1^2 + y3 >= 0
  CHECK_FALSE(gc.member({Rat(0), Rat(0), Rat(-1)}));
}

TEST_CASE("nd numeric oracle cross-check on the n=3 cases") {
  std::mt19937_64 rng(97);
  const char* cases[] = {"z1^2 + z2^2 - z3^2 + 1", "z1^2 + z2^2 - z3^2 - 1"};
  for (const char* text : cases) {
    MultiPoly p = parse_poly(text, 3);
    NdNormalFormResult nf = normalize_quadric_nd(p);
    Region region = region_quadric_hyperbolic_nd(nf).pulled_back(
        nf.transform->inverse());
    for (int t = 0; t < 40; ++t) {
      std::vector<Rat> y = {random_rat(rng, 32, 8), random_rat(rng, 32, 8),
                            random_rat(rng, 32, 8)};
      bool formula = region.member(y);
      bool numeric = member_quadric_numeric(p, y, 1e-10);
      // numeric false negatives allowed, false positives not
      if (numeric) CHECK(formula);
    }
  }
}

TEST_CASE("boundary candidates carry the expected side data") {
  BoundaryCandidates bc = boundary_candidates_2c2(P2("z1^2 + i*z2^2 + 1/4i"));
  CHECK(bc.octic.degree() == 8);
  REQUIRE(bc.q2.has_value());
  CHECK(proportional_over_q(*bc.q2, P2("4*z2^2 - 1")));
  REQUIRE(bc.special_lines.size() == 1);
  CHECK(proportional_over_q(bc.special_lines[0], P2("z1")));
  CHECK_FALSE(bc.q1.has_value());

  // a rotated representative exercises the q1 branch (l1 != 0)
  BoundaryCandidates rot = boundary_candidates_2c2(
      P2("z1^2 - 3i*z1*z2 - 2*z2^2 + 1"));
  CHECK(rot.octic.degree().value_or(0) <= 8);
  CHECK(rot.q1.has_value());

  CHECK_THROWS_AS(boundary_candidates_2c2(P2("z1^2 + z2^2 + 1")), Error);
}
