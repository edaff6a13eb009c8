// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "improj/poly.hpp"
#include "improj/rand.hpp"
#include "improj/transform.hpp"

using namespace improj;

namespace {

MultiPoly random_poly(std::mt19937_64& rng, int nvars, int max_deg,
                      int terms) {
  MultiPoly p(nvars);
  std::uniform_int_distribution<int> dexp(0, max_deg);
  for (int t = 0; t < terms; ++t) {
    ExpVec e(nvars);
    for (int j = 0; j < nvars; ++j) e[j] = dexp(rng);
    p.add_term(e, RatC(random_rat(rng, 20, 6), random_rat(rng, 20, 6)));
  }
  return p;
}

}  // namespace

TEST_CASE("parser hits the documented term maps") {
  MultiPoly p = parse_poly("z1^2 + i*z2^2 + z2", 2);
  CHECK(p.coeff({2, 0}) == RatC(1));
  CHECK(p.coeff({0, 2}) == RatC(Rat(0), Rat(1)));
  CHECK(p.coeff({0, 1}) == RatC(1));
  CHECK(p.terms().size() == 3);

  MultiPoly q = parse_poly("(1+2i)*z1*z2 - 3/2", 2);
  CHECK(q.coeff({1, 1}) == RatC(Rat(1), Rat(2)));
  CHECK(q.coeff({0, 0}) == RatC(Rat(-3, 2)));
  CHECK(q.terms().size() == 2);
}

TEST_CASE("parser reports the byte offset of the error") {
  try {
    parse_poly("z1^^2", 2);
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Syntax);
    CHECK(std::string(e.what()).find("offset 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_poly("z3", 2), Error);     // index out of range
  CHECK_THROWS_AS(parse_poly("z1^0.5", 2), Error); // decimal exponent
  CHECK_THROWS_AS(parse_poly("2 z1", 2), Error);   // implicit product
}

TEST_CASE("printing then parsing is the identity") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    MultiPoly p = random_poly(rng, 2, 4, 6);
    MultiPoly back = parse_poly(p.str(), 2);
    CHECK(back == p);
    CHECK(parse_poly(back.str(), 2) == back);
  }
  // three variables as well
  for (int t = 0; t < 20; ++t) {
    MultiPoly p = random_poly(rng, 3, 3, 5);
    CHECK(parse_poly(p.str(), 3) == p);
  }
}

TEST_CASE("json round trip preserves the term map") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    MultiPoly p = random_poly(rng, 2, 5, 7);
    CHECK(MultiPoly::from_json(p.json()) == p);
  }
}

TEST_CASE("degree of the zero polynomial is a sentinel") {
  MultiPoly zero(2);
  CHECK_FALSE(zero.degree().has_value());
  CHECK(MultiPoly::constant(2, RatC(5)).degree() == 0);
  CHECK_THROWS_AS(zero.initial_form(), Error);
}

TEST_CASE("degree is additive on products") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 40; ++t) {
    MultiPoly p = random_poly(rng, 2, 3, 4);
    MultiPoly q = random_poly(rng, 2, 3, 4);
    if (p.is_zero() || q.is_zero()) continue;
    CHECK(*(p * q).degree() == *p.degree() + *q.degree());
  }
}

TEST_CASE("initial forms") {
  CHECK(parse_poly("z1^2 + i*z2^2 + z2", 2).initial_form() ==
        parse_poly("z1^2 + i*z2^2", 2));
  CHECK(parse_poly("z1*z2 + 2i", 2).initial_form() ==
        parse_poly("z1*z2", 2));
  CHECK(parse_poly("5", 2).initial_form() == parse_poly("5", 2));
}

TEST_CASE("affine substitution reproduces the worked transformation") {
  MultiPoly q = parse_poly("z1^2 + 2*z1*z2 + z2^2 + 2i*z2 + 1", 2);
  AffineTransform t{RatC(1),
                    {{Rat(1), Rat(-1)}, {Rat(0), Rat(1)}},
                    {RatC(Rat(0), Rat(-1, 2)), RatC(Rat(0), Rat(1, 2))}};
  CHECK(substitute_affine(q, t) == parse_poly("z1^2 + 2i*z2", 2));

  MultiPoly p = parse_poly("z1^2", 2);
  AffineTransform shift{RatC(1), identity_matrix(2),
                        {RatC(Rat(0), Rat(1)), RatC()}};
  CHECK(substitute_affine(p, shift) == parse_poly("z1^2 + 2i*z1 - 1", 2));

  AffineTransform id = AffineTransform::identity(2);
  CHECK(substitute_affine(q, id) == q);
}

TEST_CASE("substitution along a transform then its inverse is the identity") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 25; ++t) {
    MultiPoly p = random_poly(rng, 2, 3, 5);
    if (p.is_zero()) continue;
    RatMatrix a = {{random_rat(rng, 8, 3), random_rat(rng, 8, 3)},
                   {random_rat(rng, 8, 3), random_rat(rng, 8, 3)}};
    if (matrix_det(a) == 0) continue;
    AffineTransform tr{RatC(random_nonzero_rat(rng, 5, 2),
                            random_rat(rng, 5, 2)),
                       a,
                       {RatC(random_rat(rng, 4, 2), random_rat(rng, 4, 2)),
                        RatC(random_rat(rng, 4, 2), random_rat(rng, 4, 2))}};
    MultiPoly q = substitute_affine(substitute_affine(p, tr), tr.inverse());
    CHECK(q == p);
    CHECK(*substitute_affine(p, tr).degree() == *p.degree());
  }
}

TEST_CASE("real/imaginary split on the worked cases") {
  // p = z1^2 + i: p_re = x1^2 - y1^2, p_im = 2 x1 y1 + 1
  RealSplit s = split_real_imag(parse_poly("z1^2 + i", 1));
  CHECK(s.p_re == parse_poly("x1^2 - x2^2", 2));  // vars are (x1, y1)
  CHECK(s.p_im == parse_poly("2*x1*x2 + 1", 2));

  RealSplit c = split_real_imag(parse_poly("i", 1));
  CHECK(c.p_re.is_zero());
  CHECK(c.p_im == parse_poly("1", 2));
}

TEST_CASE("split matches direct evaluation on random rational points") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 5; ++t) {
    MultiPoly p = random_poly(rng, 2, 3, 6);
    RealSplit s = split_real_imag(p);
    for (int k = 0; k < 100; ++k) {
      std::vector<Rat> x = {random_rat(rng, 30, 7), random_rat(rng, 30, 7)};
      std::vector<Rat> y = {random_rat(rng, 30, 7), random_rat(rng, 30, 7)};
      RatC direct = p.eval({RatC(x[0], y[0]), RatC(x[1], y[1])});
      std::vector<Rat> xy = {x[0], x[1], y[0], y[1]};
      CHECK(s.p_re.eval_real(xy) == direct.re);
      CHECK(s.p_im.eval_real(xy) == direct.im);
    }
  }
}

TEST_CASE("binary forms demand homogeneous input") {
  CHECK_THROWS_AS(BinaryForm::from_poly(parse_poly("z1^2 + z2", 2)), Error);
  BinaryForm f = initial_binary_form(parse_poly("z1^2 + i*z2^2 + z2", 2));
  CHECK(f.degree == 2);
  CHECK(f.coeffs[0] == RatC(1));
  CHECK(f.coeffs[1] == RatC(0));
  CHECK(f.coeffs[2] == RatC(Rat(0), Rat(1)));
  CHECK(f.to_poly() == parse_poly("z1^2 + i*z2^2", 2));
}
