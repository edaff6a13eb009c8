// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "improj/rand.hpp"
#include "improj/realroots.hpp"

using namespace improj;

namespace {

MultiPoly P2(const std::string& s) { return parse_poly(s, 2); }

}  // namespace

TEST_CASE("quartic criteria on the pinned cases") {
  // x^4 - 1: roots +-1
  CHECK(quartic_has_real_root(Rat(-1), Rat(0), Rat(0), Rat(0), Rat(1)).has_root);
  // x^4 + 1: strictly positive
  CHECK_FALSE(
      quartic_has_real_root(Rat(1), Rat(0), Rat(0), Rat(0), Rat(1)).has_root);
  // x^4: quadruple zero root; Disc = D = R = 0 and P = 0, so it has a root
  QuarticCriteria c =
      quartic_has_real_root(Rat(0), Rat(0), Rat(0), Rat(0), Rat(1));
  CHECK(c.has_root);
  CHECK(c.disc == 0);
  CHECK(c.P == 0);
  CHECK(c.R == 0);
  CHECK(c.D == 0);
  CHECK_THROWS_AS(quartic_has_real_root(Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)),
                  Error);
}

TEST_CASE("hardcoded quartic discriminant matches the resultant route") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 120; ++t) {
    Rat a0 = random_rat(rng, 12, 4), a1 = random_rat(rng, 12, 4),
        a2 = random_rat(rng, 12, 4), a3 = random_rat(rng, 12, 4),
        a4 = random_nonzero_rat(rng, 12, 4);
    QuarticCriteria c = quartic_has_real_root(a0, a1, a2, a3, a4);
    MultiPoly f(1);
    f.add_term({0}, RatC(a0));
    f.add_term({1}, RatC(a1));
    f.add_term({2}, RatC(a2));
    f.add_term({3}, RatC(a3));
    f.add_term({4}, RatC(a4));
    MultiPoly d = discriminant(f, 0);
    CHECK(d.constant_term().re == c.disc);
  }
}

TEST_CASE("criteria agree with Sturm including degenerate families") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 2000; ++t) {
    Rat a0 = random_rat(rng, 60, 8), a1 = random_rat(rng, 60, 8),
        a2 = random_rat(rng, 60, 8), a3 = random_rat(rng, 60, 8),
        a4 = random_nonzero_rat(rng, 60, 8);
    RealUniPoly f{std::vector<Rat>{a0, a1, a2, a3, a4}};
    CHECK(quartic_has_real_root(a0, a1, a2, a3, a4).has_root ==
          (sturm_count_all(f) > 0));
  }
  for (int t = 0; t < 100; ++t) {
    Rat a = random_rat(rng, 15, 4), b = random_rat(rng, 15, 4);
    // (x^2+a)(x^2+b)
    CHECK(quartic_has_real_root(a * b, Rat(0), a + b, Rat(0), Rat(1)).has_root ==
          (sturm_count_all(
               RealUniPoly{std::vector<Rat>{a * b, Rat(0), a + b, Rat(0),
                                            Rat(1)}}) > 0));
  }
}

TEST_CASE("resultants with the f-rows-first sign convention") {
  // Res_x(x^2 - t, x - 1) = 1 - t over variables (x, t)
  MultiPoly f = P2("z1^2 - z2");
  MultiPoly g = P2("z1 - 1");
  CHECK(resultant(f, g, 0) == P2("1 - z2"));

  // Res_x(x - a, x - b) = a - b over (x, a, b)
  MultiPoly fa = parse_poly("z1 - z2", 3);
  MultiPoly fb = parse_poly("z1 - z3", 3);
  CHECK(resultant(fa, fb, 0) == parse_poly("z2 - z3", 3));
  CHECK(resultant(fb, fa, 0) == parse_poly("z3 - z2", 3));
}

TEST_CASE("eliminating x1 from the worked system gives the quartic") {
  // q = z1^2 + i z2^2 + i/4 split over (x1, x2, y1, y2)
  MultiPoly q = P2("z1^2 + i*z2^2 + 1/4i");
  RealSplit s = split_real_imag(q);
  MultiPoly r = resultant(s.p_re, s.p_im, 0);
  // 16 * r must match the displayed quartic in x2 with y-coefficients
  MultiPoly expected(4);
  auto term = [&](int e2, int ey1, int ey2, long num, long den) {
    expected.add_term({0, static_cast<uint32_t>(e2), static_cast<uint32_t>(ey1),
                       static_cast<uint32_t>(ey2)},
                      RatC(Rat(num, den)));
  };
  term(4, 0, 0, 16, 1);
  term(2, 0, 2, -32, 1);
  term(2, 0, 0, 8, 1);
  term(1, 2, 1, -128, 1);
  term(0, 4, 0, -64, 1);
  term(0, 0, 4, 16, 1);
  term(0, 0, 2, -8, 1);
  term(0, 0, 0, 1, 1);
  CHECK(r.scaled(RatC(16)) == expected);
}

TEST_CASE("discriminants") {
  // Disc_x(a x^2 + b x + c) = b^2 - 4ac over (x, a, b, c)
  MultiPoly f = parse_poly("z2*z1^2 + z3*z1 + z4", 4);
  CHECK(discriminant(f, 0) == parse_poly("z3^2 - 4*z2*z4", 4));
  CHECK(discriminant(P2("z1^2 + 1"), 0) == P2("-4"));
  CHECK_THROWS_AS(discriminant(P2("z2"), 0), Error);
}

TEST_CASE("resultant vanishes exactly on common factors") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 40; ++t) {
    MultiPoly common = P2("z1 - 2");
    MultiPoly f = common * P2("z1^2 + 1");
    MultiPoly g = common * P2("z1 + 3");
    CHECK(resultant(f, g, 0).is_zero());
    MultiPoly g2 = P2("z1 + 3");
    CHECK_FALSE(resultant(f, g2, 0).is_zero());
  }
}

TEST_CASE("multivariate squarefree and odd parts") {
  MultiPoly a = P2("z1 - z2"), b = P2("z1 + z2");
  CHECK(proportional_over_q(squarefree_part_mv(a * a * b), a * b));
  MultiPoly y1cubed = P2("z1^3");
  CHECK(proportional_over_q(squarefree_part_mv(y1cubed), P2("z1")));
  // odd part drops even multiplicities entirely
  CHECK(proportional_over_q(odd_multiplicity_part(a * a * b), b));
  CHECK(proportional_over_q(odd_multiplicity_part(a * a * a * b * b), a));
  std::mt19937_64 rng(47);
  for (int t = 0; t < 10; ++t) {
    MultiPoly f = P2("z1 + 1"), g = P2("z1*z2 - 3");
    CHECK(proportional_over_q(squarefree_part_mv(f * f * g),
                              squarefree_part_mv(f * g)));
  }
}

TEST_CASE("the worked discriminant splits into a square times the octic") {
  MultiPoly q = P2("z1^2 + i*z2^2 + 1/4i");
  RealSplit s = split_real_imag(q);
  auto im_rows = s.p_im.coeffs_in(0);
  auto re_rows = s.p_re.coeffs_in(0);
  MultiPoly M = im_rows[0], L = im_rows[1];
  MultiPoly P0 = re_rows[0];
  MultiPoly R0 = M * M + P0 * L * L;  // the x1-coefficient P1 vanishes here
  MultiPoly disc = discriminant(R0, 1);
  // disc = const * y1^4 * octic: squarefree part y1 * octic, odd part octic
  MultiPoly octic(4);
  auto oterm = [&](int e1, int e2, long c) {
    octic.add_term({0, 0, static_cast<uint32_t>(e1), static_cast<uint32_t>(e2)},
                   RatC(Rat(c)));
  };
  oterm(8, 0, -64);
  oterm(4, 4, -128);
  oterm(0, 8, -64);
  oterm(4, 2, -80);
  oterm(0, 6, 48);
  oterm(4, 0, 1);
  oterm(0, 4, -12);
  oterm(0, 2, 1);
  MultiPoly y1(4);
  y1.add_term({0, 0, 1, 0}, RatC(1));
  CHECK(proportional_over_q(odd_multiplicity_part(disc), octic));
  CHECK(proportional_over_q(squarefree_part_mv(disc), y1 * octic));
}

TEST_CASE("real projective roots of binary forms") {
  BinaryForm cube = BinaryForm::from_poly(P2("z1^3 + z2^3"));
  BinaryRealRoot r = binary_form_has_real_root(cube);
  CHECK(r.has_root);
  REQUIRE(r.rational_root.has_value());
  CHECK(*r.rational_root == Rat(-1));

  BinaryForm twisted = BinaryForm::from_poly(P2("(z1 - i*z2)^3"));
  CHECK_FALSE(binary_form_has_real_root(twisted).has_root);

  BinaryForm mixed = BinaryForm::from_poly(P2("z1^2 + i*z2^2"));
  CHECK_FALSE(binary_form_has_real_root(mixed).has_root);

  BinaryForm inf_root = BinaryForm::from_poly(P2("z2^2"));
  BinaryRealRoot ri = binary_form_has_real_root(inf_root);
  CHECK(ri.has_root);
  CHECK(ri.at_infinity);
}
