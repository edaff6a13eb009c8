// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "improj/normalize.hpp"
#include "improj/oracle.hpp"
#include "improj/rand.hpp"
#include "improj/region.hpp"

using namespace improj;

namespace {

MultiPoly P2(const std::string& s) { return parse_poly(s, 2); }

}  // namespace

TEST_CASE("the worked parabola reduces with the documented transform") {
  NormalFormResult nf = normalize_conic(P2("z1^2 + 2*z1*z2 + z2^2 + 2i*z2 + 1"));
  CHECK(nf.cls == ConicClass::C1a2);
  CHECK(nf.exact);
  CHECK(*nf.gamma == RatC(Rat(0), Rat(2)));
  CHECK(*nf.normal_form == P2("z1^2 + 2i*z2"));
  const AffineTransform& t = *nf.transform;
  CHECK(t.A == RatMatrix{{Rat(1), Rat(-1)}, {Rat(0), Rat(1)}});
  CHECK(t.lambda == RatC(1));
  // b carries the translation folded through A: A * (0, i/2)
  CHECK(t.b[0] == RatC(Rat(0), Rat(-1, 2)));
  CHECK(t.b[1] == RatC(Rat(0), Rat(1, 2)));
}

TEST_CASE("every exact normalization satisfies the substitution identity") {
  const char* reps[] = {"z1^2 + i",
                        "z1^2 - 1",
                        "z1^2 + 2i*z2",
                        "z1^2 + 2*z1*z2 + z2^2 + 2i*z2 + 1",
                        "z1*z2 + 2i",
                        "z1^2 - z2^2 + 2i",
                        "z1^2 - z2^2 - 1",
                        "z1^2 - 2i*z1*z2 - z2^2 + i",
                        "z1^2 - 2i*z1*z2 - z2^2 + (2+1i)*z2",
                        "z1*z2 - i*z2^2 - i",
                        "z1*z2 - (1+1i)*z2^2 + 2i",
                        "z1^2 + z2^2 + i",
                        "z1^2 - 3i*z1*z2 - 2*z2^2"};
  for (const char* text : reps) {
    MultiPoly p = P2(text);
    NormalFormResult nf = normalize_conic(p);
    REQUIRE(nf.exact);
    CHECK(substitute_affine(p, *nf.transform) == *nf.normal_form);
  }
}

TEST_CASE("the hyperbola example lands on z1 z2 + gamma with |2 gamma| = 1") {
  NormalFormResult nf = normalize_conic(P2("z1^2 - z2^2 + 2i"));
  CHECK(nf.cls == ConicClass::C1b);
  REQUIRE(nf.exact);
  // different valid normalizations scale gamma by rationals; the orbit data
  // here pins |gamma|^2 = 1/4 and a purely imaginary value
  CHECK(nf.gamma->re == 0);
  CHECK(nf.gamma->norm2() == Rat(1, 4));
}

TEST_CASE("irrational root data produces certified intervals, exact tags") {
  NormalFormResult nf = normalize_conic(P2("z1^2 - 2*z2^2"));
  CHECK(nf.cls == ConicClass::C1b);
  CHECK_FALSE(nf.exact);
  REQUIRE(nf.itransform.has_value());
  REQUIRE(nf.igamma.has_value());
  Rat limit = Rat(1, mpz_class(mpz_class(1) << 64));
  for (const auto& row : nf.itransform->A)
    for (const auto& entry : row) CHECK(entry.width() <= limit);
  // gamma is exactly 0 here (no constant term); the enclosure must agree
  CHECK(nf.igamma->re.contains_zero());
  CHECK(nf.igamma->im.contains_zero());
  // the matrix columns enclose the true root directions (+-sqrt(2), 1):
  // the interval squares must straddle 2
  for (int col = 0; col < 2; ++col) {
    RatInterval c = nf.itransform->A[0][col];
    CHECK((c.lo * c.lo - 2) * (c.hi * c.hi - 2) <= 0);
  }

  NormalFormResult conj = normalize_conic(P2("z1^2 - 2*z1*z2 + 3*z2^2 + 1"));
  CHECK(conj.cls == ConicClass::C2c1);
  CHECK_FALSE(conj.exact);

  NormalFormResult irr2c2 = normalize_conic(P2("z1^2 + (1+2i)*z2^2 + 1"));
  CHECK_FALSE(irr2c2.exact);
  CHECK(irr2c2.ialpha.has_value());

  NormalFormResult irr2c2b = normalize_conic(P2("z1^2 + i*z2^2 + z2"));
  CHECK(irr2c2b.cls == ConicClass::C2c2);
  CHECK_FALSE(irr2c2b.exact);
}

TEST_CASE("membership round trip through the recorded transform") {
  std::mt19937_64 rng(71);
  const char* reps[] = {"z1^2 + 2*z1*z2 + z2^2 + 2i*z2 + 1",
                        "z1^2 - z2^2 + 2i", "z1*z2 - i*z2^2 - i",
                        "z1^2 + z2^2 + 2i*z2"};
  for (const char* text : reps) {
    MultiPoly p = P2(text);
    NormalFormResult nf = normalize_conic(p);
    REQUIRE(nf.exact);
    for (int t = 0; t < 200; ++t) {
      std::vector<Rat> y = {random_rat(rng, 64, 16), random_rat(rng, 64, 16)};
      // y in I(normal form) iff A y + Im(b) in I(p)
      CHECK(member_conic_exact(*nf.normal_form, y) ==
            member_conic_exact(p, nf.transform->apply_imag(y)));
    }
  }
}

TEST_CASE("normalization tags agree with the arrangement across a sweep") {
  std::mt19937_64 rng(73);
  int done = 0;
  while (done < 1000) {
    MultiPoly p(2);
    p.add_term({2, 0}, RatC(random_rat(rng, 4, 2), random_rat(rng, 4, 2)));
    p.add_term({1, 1}, RatC(random_rat(rng, 4, 2), random_rat(rng, 4, 2)));
    p.add_term({0, 2}, RatC(random_rat(rng, 4, 2), random_rat(rng, 4, 2)));
    p.add_term({1, 0}, RatC(random_rat(rng, 4, 2), random_rat(rng, 4, 2)));
    p.add_term({0, 1}, RatC(random_rat(rng, 4, 2), random_rat(rng, 4, 2)));
    p.add_term({0, 0}, RatC(random_rat(rng, 4, 2), random_rat(rng, 4, 2)));
    if (!p.degree() || *p.degree() != 2) continue;
    ++done;
    NormalFormResult nf = normalize_conic(p);
    ArrangementTag tag = root_arrangement(initial_binary_form(p)).tag;
    switch (nf.cls) {
      case ConicClass::C1a1:
      case ConicClass::C1a2:
        CHECK(tag == ArrangementTag::DoubleReal);
        break;
      case ConicClass::C1b:
        CHECK(tag == ArrangementTag::TwoDistinctReal);
        break;
      case ConicClass::C2a1:
      case ConicClass::C2a2:
        CHECK(tag == ArrangementTag::DoubleNonReal);
        break;
      case ConicClass::C2b:
        CHECK(tag == ArrangementTag::OneRealOneNonReal);
        break;
      case ConicClass::C2c1:
        CHECK(tag == ArrangementTag::ConjugatePair);
        break;
      case ConicClass::C2c2:
        CHECK(tag == ArrangementTag::TwoDistinctNonRealNonConjugate);
        break;
    }
    if (nf.exact)
      CHECK(substitute_affine(p, *nf.transform) == *nf.normal_form);
  }
}

TEST_CASE("region pullback on the documented cases") {
  // identity leaves a region alone
  Region r = Region::empty(2);
  r.clauses.push_back(
      {{Atom{MultiPoly::variable(2, 1), Rel::GE}}});  // y2 >= 0
  Region same = r.pulled_back(AffineTransform::identity(2));
  CHECK(same.member({Rat(1), Rat(1)}));
  CHECK_FALSE(same.member({Rat(1), Rat(-1)}));

  // pure imaginary translation b = (0, i/2): y2 >= 0 becomes y2 + 1/2 >= 0
  AffineTransform shift{RatC(1), identity_matrix(2),
                        {RatC(), RatC(Rat(0), Rat(1, 2))}};
  Region shifted = r.pulled_back(shift);
  CHECK(shifted.member({Rat(0), Rat(-1, 2)}));
  CHECK_FALSE(shifted.member({Rat(0), Rat(-1)}));
  CHECK(shifted.member({Rat(0), Rat(0)}));
}

TEST_CASE("n-dimensional normalization of the pinned quadrics") {
  NdNormalFormResult a = normalize_quadric_nd(parse_poly("z1^2 + z2^2 - z3^2 + 1", 3));
  CHECK(a.nd_case == NdCase::E);
  CHECK(a.exact);
  CHECK(*a.gamma == RatC(1));
  CHECK(a.j == 2);
  CHECK(*a.normal_form == parse_poly("z1^2 + z2^2 - z3^2 + 1", 3));

  // uniform scaling is absorbed into the variety-preserving scalar
  NdNormalFormResult b =
      normalize_quadric_nd(parse_poly("2*z1^2 + 2*z2^2 - 2*z3^2 - 2i", 3));
  CHECK(b.nd_case == NdCase::E);
  CHECK(b.exact);
  CHECK(*b.gamma == RatC(Rat(0), Rat(-1)));
  CHECK(substitute_affine(parse_poly("2*z1^2 + 2*z2^2 - 2*z3^2 - 2i", 3),
                          *b.transform) == *b.normal_form);

  NdNormalFormResult c = normalize_quadric_nd(parse_poly("z1^2 + z4", 4));
  CHECK(c.nd_case == NdCase::B);
  CHECK(c.rank_one);
  CHECK(c.exact);
  CHECK(*c.normal_form == parse_poly("z1^2 + z2", 4));

  CHECK_THROWS_AS(normalize_quadric_nd(parse_poly("z1^2 + z2^2 + z3^2 + 1", 3)),
                  Error);
}

TEST_CASE("n-dimensional case detection covers the full-space cases") {
  // non-real single linear direction: case (c)
  NdNormalFormResult c =
      normalize_quadric_nd(parse_poly("z1^2 + z2^2 - z3^2 + i*z4", 4));
  CHECK(c.nd_case == NdCase::C);
  // independent real and imaginary directions: case (d)
  NdNormalFormResult d =
      normalize_quadric_nd(parse_poly("z1^2 + z2^2 - z3^2 + z4 + i*z5", 5));
  CHECK(d.nd_case == NdCase::D);
  // homogeneous: case (a)
  NdNormalFormResult a =
      normalize_quadric_nd(parse_poly("z1^2 + z2^2 - z3^2", 3));
  CHECK(a.nd_case == NdCase::A);
}
