// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "improj/classify.hpp"
#include "improj/normalize.hpp"
#include "improj/rand.hpp"
#include "improj/transform.hpp"

using namespace improj;

namespace {

MultiPoly P2(const std::string& s) { return parse_poly(s, 2); }

AffineTransform random_g2(std::mt19937_64& rng) {
  while (true) {
    RatMatrix a = {{random_rat(rng, 6, 3), random_rat(rng, 6, 3)},
                   {random_rat(rng, 6, 3), random_rat(rng, 6, 3)}};
    if (matrix_det(a) == 0) continue;
    return AffineTransform{
        RatC(random_nonzero_rat(rng, 4, 2), random_rat(rng, 4, 2)),
        std::move(a),
        {RatC(random_rat(rng, 3, 2), random_rat(rng, 3, 2)),
         RatC(random_rat(rng, 3, 2), random_rat(rng, 3, 2))}};
  }
}

}  // namespace

TEST_CASE("root arrangements of the pinned binary quadratics") {
  RootArrangement a =
      root_arrangement(BinaryForm::from_poly(P2("z1*z2")));
  CHECK(a.tag == ArrangementTag::TwoDistinctReal);
  REQUIRE(a.roots.size() == 2);
  CHECK((a.roots[0].at_infinity || a.roots[1].at_infinity));

  RootArrangement b =
      root_arrangement(BinaryForm::from_poly(P2("z1^2 + z2^2")));
  CHECK(b.tag == ArrangementTag::ConjugatePair);
  CHECK(b.roots_rational);
  CHECK(b.roots[0].value.im != 0);

  RootArrangement c =
      root_arrangement(BinaryForm::from_poly(P2("z1^2 + i*z2^2")));
  CHECK(c.tag == ArrangementTag::TwoDistinctNonRealNonConjugate);
  CHECK_FALSE(c.roots_rational);  // roots at +-e^{-i pi/4}

  CHECK(root_arrangement(BinaryForm::from_poly(P2("z1^2"))).tag ==
        ArrangementTag::DoubleReal);
  CHECK(root_arrangement(BinaryForm::from_poly(P2("(z1 - i*z2)^2"))).tag ==
        ArrangementTag::DoubleNonReal);
  CHECK(root_arrangement(BinaryForm::from_poly(P2("z2*(z1 - i*z2)"))).tag ==
        ArrangementTag::OneRealOneNonReal);
}

TEST_CASE("conic classes of the pinned examples") {
  CHECK(conic_class(P2("z1^2 + i*z2^2 + z2")) == ConicClass::C2c2);
  CHECK(conic_class(P2("z1^2 + 2*z1*z2 + z2^2 + 2i*z2 + 1")) ==
        ConicClass::C1a2);
  CHECK(conic_class(P2("z1^2 - z2^2 + 2i")) == ConicClass::C1b);
  CHECK(conic_class(P2("z1^2 + 1")) == ConicClass::C1a1);
  CHECK(conic_class(P2("z1^2 - 2i*z1*z2 - z2^2 + 1")) == ConicClass::C2a1);
  CHECK(conic_class(P2("z1^2 - 2i*z1*z2 - z2^2 + z2")) == ConicClass::C2a2);
  CHECK(conic_class(P2("z1*z2 - i*z2^2 + 3")) == ConicClass::C2b);
  CHECK(conic_class(P2("z1^2 + z2^2 + 1")) == ConicClass::C2c1);
  CHECK_THROWS_AS(conic_class(P2("z1 + 1")), Error);
  CHECK_THROWS_AS(conic_class(P2("z1^3 + z2")), Error);
}

TEST_CASE("the class is a G2 invariant") {
  std::mt19937_64 rng(53);
  const char* reps[] = {"z1^2 + i",
                        "z1^2 + 2i*z2",
                        "z1*z2 + 2i",
                        "z1^2 - 2i*z1*z2 - z2^2 + 1",
                        "z1*z2 - i*z2^2 - i",
                        "z1^2 + z2^2 + i",
                        "z1^2 + i*z2^2 + z2"};
  for (const char* text : reps) {
    MultiPoly p = P2(text);
    ConicClass base = conic_class(p);
    for (int t = 0; t < 100; ++t) {
      AffineTransform tr = random_g2(rng);
      CHECK(conic_class(substitute_affine(p, tr)) == base);
    }
  }
}

TEST_CASE("scaling by a nonzero complex number preserves the class") {
  std::mt19937_64 rng(59);
  const char* reps[] = {"z1^2 + z2", "z1*z2 - 1", "z1^2 + z2^2 + 1",
                        "z1^2 + i*z2^2 + 1/4i"};
  for (const char* text : reps) {
    MultiPoly p = P2(text);
    ConicClass base = conic_class(p);
    for (int t = 0; t < 25; ++t) {
      RatC lambda(random_rat(rng, 9, 3), random_rat(rng, 9, 3));
      if (lambda.is_zero()) continue;
      CHECK(conic_class(p.scaled(lambda)) == base);
    }
  }
}

TEST_CASE("exactly one arrangement fires across a random sweep") {
  std::mt19937_64 rng(61);
  int seen[6] = {0, 0, 0, 0, 0, 0};
  for (int t = 0; t < 3000; ++t) {
    RatC c0(random_rat(rng, 6, 2), random_rat(rng, 6, 2));
    RatC c1(random_rat(rng, 6, 2), random_rat(rng, 6, 2));
    RatC c2(random_rat(rng, 6, 2), random_rat(rng, 6, 2));
    if (c0.is_zero() && c1.is_zero() && c2.is_zero()) continue;
    BinaryForm f;
    f.degree = 2;
    f.coeffs = {c0, c1, c2};
    RootArrangement arr = root_arrangement(f);  // throws on inconsistency
    seen[static_cast<int>(arr.tag)]++;
    // recheck the tag from the coefficient predicates alone
    if (arr.roots_rational) {
      int reals = 0, nonreals = 0;
      for (const auto& r : arr.roots) (r.is_real() ? reals : nonreals)++;
      switch (arr.tag) {
        case ArrangementTag::DoubleReal: CHECK(reals == 2); break;
        case ArrangementTag::TwoDistinctReal: CHECK(reals == 2); break;
        case ArrangementTag::DoubleNonReal: CHECK(nonreals == 2); break;
        case ArrangementTag::OneRealOneNonReal:
          CHECK(reals == 1);
          CHECK(nonreals == 1);
          break;
        case ArrangementTag::ConjugatePair:
          CHECK(nonreals == 2);
          CHECK(arr.roots[0].value == arr.roots[1].value.conj());
          break;
        case ArrangementTag::TwoDistinctNonRealNonConjugate:
          CHECK(nonreals == 2);
          CHECK(arr.roots[0].value != arr.roots[1].value.conj());
          break;
      }
    }
  }
  // boundary families: double roots and conjugate pairs must actually occur
  CHECK(root_arrangement(BinaryForm::from_poly(P2("(z1 - 2*z2)^2"))).tag ==
        ArrangementTag::DoubleReal);
  CHECK(root_arrangement(
            BinaryForm::from_poly(P2("2*z1^2 - 4*z1*z2 + 6*z2^2")))
            .tag == ArrangementTag::ConjugatePair);
  CHECK(root_arrangement(
            BinaryForm::from_poly(P2("(2+2i)*z1^2 + (2+2i)*z2^2")))
            .tag == ArrangementTag::ConjugatePair);
}

TEST_CASE("hyperbolicity of initial forms") {
  HyperbolicityReport h1 = is_hyperbolic_initial(P2("z1^2 - z2^2"));
  CHECK(h1.hyperbolic);
  CHECK(*h1.realizing_scalar == RatC(1));
  CHECK(h1.n_plus == 1);
  CHECK(h1.n_minus == 1);

  HyperbolicityReport h2 = is_hyperbolic_initial(P2("z1^2 + z2^2"));
  CHECK_FALSE(h2.hyperbolic);  // definite

  HyperbolicityReport h3 = is_hyperbolic_initial(P2("i*z1^2 - i*z2^2"));
  CHECK(h3.hyperbolic);
  REQUIRE(h3.realizing_scalar.has_value());
  // lambda * i must be real: lambda = -i up to real sign
  CHECK((h3.realizing_scalar->re == 0));

  // rank one
  CHECK(is_hyperbolic_initial(P2("z1^2 + z2")).hyperbolic);
  // no real scaling at all
  CHECK_FALSE(is_hyperbolic_initial(P2("z1^2 + i*z2^2")).hyperbolic);
  // n = 3 Lorentz form
  CHECK(is_hyperbolic_initial(parse_poly("z1^2 + z2^2 - z3^2 + 1", 3))
            .hyperbolic);
  CHECK_FALSE(
      is_hyperbolic_initial(parse_poly("z1^2 + z2^2 + z3^2 + 1", 3)).hyperbolic);
}

TEST_CASE("congruence diagonalization is exact") {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 60; ++t) {
    int n = 2 + static_cast<int>(rng() % 3);
    RatMatrix m(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        m[i][j] = random_rat(rng, 8, 3);
        m[j][i] = m[i][j];
      }
    std::vector<Rat> diag;
    RatMatrix s;
    congruence_diagonalize(m, &diag, &s);
    CHECK(matrix_det(s) != 0);
    RatMatrix st(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) st[i][j] = s[j][i];
    RatMatrix res = matrix_mul(st, matrix_mul(m, s));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(res[i][j] == (i == j ? diag[i] : Rat(0)));
  }
}
