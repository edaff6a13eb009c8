// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "improj/certify.hpp"
#include "improj/formulas.hpp"
#include "improj/rand.hpp"

using namespace improj;

namespace {

MultiPoly P2(const std::string& s) { return parse_poly(s, 2); }

}  // namespace

TEST_CASE("exact PSD check on small matrices") {
  CHECK(psd_check({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}));
  CHECK_FALSE(psd_check({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}));
  CHECK(psd_check({{Rat(2), Rat(1)}, {Rat(1), Rat(2)}}));
  CHECK(psd_check({{Rat(0), Rat(0)}, {Rat(0), Rat(0)}}));
  CHECK(psd_check({{Rat(1), Rat(1)}, {Rat(1), Rat(1)}}));  // rank one
  CHECK_FALSE(psd_check({{Rat(-1)}}));
  CHECK_THROWS_AS(psd_check({{Rat(1), Rat(2)}, {Rat(3), Rat(4)}}), Error);
}

TEST_CASE("2x2 PSD equals the trace/determinant shortcut") {
  std::mt19937_64 rng(127);
  for (int t = 0; t < 300; ++t) {
    Rat a = random_rat(rng, 10, 4), b = random_rat(rng, 10, 4),
        d = random_rat(rng, 10, 4);
    bool via_sturm = psd_check({{a, b}, {b, d}});
    bool via_minors = (a >= 0) && (d >= 0) && (a * d - b * b >= 0);
    CHECK(via_sturm == via_minors);
  }
}

TEST_CASE("the parabola certificate carries the documented matrix") {
  auto certs = certificates_for(normalize_conic(P2("z1^2 + 2i*z2")));
  REQUIRE(certs.size() == 1);
  const auto& m = certs[0].matrix;
  CHECK(m[0][0].const_part == 1);
  CHECK(m[0][1].ycoef[0] == 1);
  CHECK(m[1][1].ycoef[1] == -2);
  CHECK(certs[0].strict);
  auto v = verify_certificate(certs, P2("z1^2 + 2i*z2"), 400, 1);
  CHECK(v.ok);
}

TEST_CASE("the quadrant certificates have unit radicals for gamma = 2i") {
  NormalFormResult nf = normalize_conic(P2("z1*z2 + 2i"));
  auto certs = certificates_for(nf);
  REQUIRE(certs.size() == 4);
  for (const auto& c : certs) {
    CHECK_FALSE(c.strict);
    const RadicalDef& rad = c.wdef.present ? c.wdef : c.udef;
    REQUIRE(rad.present);
    CHECK_FALSE(rad.nested);  // |gamma| = 2 is rational
    CHECK(rad.square == 1);   // w = u = 1
  }
  auto v = verify_certificate(certs, P2("z1*z2 + 2i"), 600, 2);
  CHECK(v.ok);
}

TEST_CASE("degenerate complements: point and segment certificates") {
  auto point_certs = certificates_for(normalize_conic(P2("z1*z2 - i*z2^2 + 3")));
  REQUIRE(point_certs.size() == 1);
  CHECK(point_certs[0].kind == "point");
  CHECK(point_certs[0].exact_form.member({Rat(0), Rat(0)}));
  CHECK_FALSE(point_certs[0].exact_form.member({Rat(1), Rat(0)}));

  auto seg_certs = certificates_for(normalize_conic(P2("z1*z2 - i*z2^2 - i")));
  REQUIRE(seg_certs.size() == 1);
  CHECK(seg_certs[0].kind == "segment");
  CHECK(seg_certs[0].exact_form.member({Rat(1), Rat(0)}));
  CHECK(seg_certs[0].exact_form.member({Rat(2), Rat(0)}));  // closed endpoint
  CHECK_FALSE(seg_certs[0].exact_form.member({Rat(3), Rat(0)}));
  auto v = verify_certificate(seg_certs, P2("z1*z2 - i*z2^2 - i"), 500, 3);
  CHECK(v.ok);

  // full-plane classes have no certificates
  CHECK(certificates_for(normalize_conic(P2("z1^2 - 2i*z1*z2 - z2^2 + i")))
            .empty());
  CHECK_THROWS_AS(certificates_for(normalize_conic(P2("z1^2 + i*z2^2 + z2"))),
                  Error);
}

TEST_CASE("the disk certificate survives an irrational radius") {
  MultiPoly p = P2("z1^2 + z2^2 + i");  // r^2 = (0 + 1)/2 = 1/2: w irrational
  auto certs = certificates_for_poly(p);
  REQUIRE(certs.size() == 1);
  CHECK(certs[0].wdef.present);
  CHECK_FALSE(certs[0].wdef.nested);  // |gamma| = 1 is rational here
  CHECK(certs[0].wdef.square == Rat(1, 2));
  auto v = verify_certificate(certs, p, 500, 4);
  CHECK(v.ok);

  // |gamma| = sqrt(2): the radius needs the nested radical form
  MultiPoly q = P2("z1^2 + z2^2 + (1+1i)");
  auto nested = certificates_for_poly(q);
  REQUIRE(nested.size() == 1);
  CHECK(nested[0].wdef.present);
  CHECK(nested[0].wdef.nested);
  auto vn = verify_certificate(nested, q, 500, 14);
  CHECK(vn.ok);
}

TEST_CASE("a corrupted certificate is detected") {
  MultiPoly p = P2("z1*z2 + 2i");
  auto certs = certificates_for(normalize_conic(p));
  // flip the sign of a diagonal entry: the PSD set changes, the exact form
  // does not, so the consistency check must trip
  certs[0].matrix[0][0].ycoef[0] = -certs[0].matrix[0][0].ycoef[0];
  auto v = verify_certificate(certs, p, 500, 5);
  CHECK_FALSE(v.ok);

  // flip an inequality in the exact form instead: oracle agreement breaks
  auto certs2 = certificates_for(normalize_conic(p));
  for (auto& clause : certs2[0].exact_form.clauses)
    for (auto& a : clause.atoms)
      if (a.rel == Rel::GE) a.rel = Rel::LE;
  auto v2 = verify_certificate(certs2, p, 500, 6);
  CHECK_FALSE(v2.ok);
}

TEST_CASE("line probes count distinct intersections") {
  MultiPoly circle = P2("z1^2 + z2^2 - 1");
  CHECK(line_intersection_count(circle, {Rat(0), Rat(0)}, {Rat(1), Rat(0)}) == 2);
  CHECK(line_intersection_count(circle, {Rat(0), Rat(0)}, {Rat(3), Rat(-2)}) ==
        2);
  MultiPoly hyp = P2("z1*z2 - 1");
  CHECK(line_intersection_count(hyp, {Rat(2), Rat(2)}, {Rat(1), Rat(1)}) == 2);
  // a line inside the curve: h = y1*y2, direction along an axis
  CHECK(line_intersection_count(P2("z1*z2"), {Rat(0), Rat(0)},
                                {Rat(1), Rat(0)}) == -1);

  RigidConvexityReport rep = rigid_convexity_line_test(
      circle, {Rat(0), Rat(0)}, 60, 7);
  CHECK(rep.degree == 2);
  CHECK(rep.lines_used == 60);
  CHECK(rep.count_histogram.at(2) == 60);
  CHECK(rep.fraction_below_degree == 0.0);
  CHECK_FALSE(rep.evidence_against);
}

TEST_CASE("the octic boundary curve fails the rigid line test") {
  BoundaryCandidates bc = boundary_candidates_2c2(P2("z1^2 + i*z2^2 + 1/4i"));
  RigidConvexityReport rep =
      rigid_convexity_line_test(bc.octic, {Rat(1, 3), Rat(1, 10)}, 40, 8);
  CHECK(rep.degree == 8);
  CHECK(rep.fraction_below_degree >= 0.9);
  CHECK(rep.evidence_against);
}
