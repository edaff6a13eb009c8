// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "improj/rand.hpp"
#include "improj/unipoly.hpp"

using namespace improj;

namespace {

RealUniPoly U(std::vector<long> coeffs) {
  std::vector<Rat> c;
  for (long v : coeffs) c.push_back(Rat(v));
  return RealUniPoly(std::move(c));
}

}  // namespace

TEST_CASE("distinct real root counts") {
  CHECK(sturm_count_all(U({-2, 0, 1})) == 2);  // x^2 - 2
  CHECK(sturm_count_all(U({1, 0, 1})) == 0);   // x^2 + 1
  // (x-1)^2 (x^2+1) = x^4 - 2x^3 + 2x^2 - 2x + 1: one distinct real root
  CHECK(sturm_count_all(U({1, -2, 2, -2, 1})) == 1);
}

TEST_CASE("half-open interval semantics (a, b]") {
  RealUniPoly f = U({-1, 0, 1});  // roots -1, 1
  CHECK(sturm_count(f, XRat::finite(Rat(0)), XRat::finite(Rat(1))) == 1);
  CHECK(sturm_count(f, XRat::finite(Rat(-1)), XRat::finite(Rat(1))) == 1);
  CHECK(sturm_count(f, XRat::finite(Rat(-2)), XRat::finite(Rat(-1))) == 1);
  CHECK(sturm_count(f, XRat::finite(Rat(1)), XRat::pos_inf()) == 0);
  CHECK(sturm_count(f, XRat::neg_inf(), XRat::finite(Rat(-1))) == 1);
}

TEST_CASE("counts are invariant under positive scaling and shifts") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    std::vector<Rat> c;
    for (int k = 0; k < 5; ++k) c.push_back(random_rat(rng, 40, 8));
    RealUniPoly f(std::move(c));
    if (f.is_zero() || f.degree() < 1) continue;
    int base = sturm_count_all(f);
    Rat scale = abs(random_nonzero_rat(rng, 9, 4));
    CHECK(sturm_count_all(f.scaled(scale)) == base);
    // shift x -> x + c via synthetic composition
    Rat shift = random_rat(rng, 6, 3);
    RealUniPoly x_plus_c(std::vector<Rat>{shift, Rat(1)});
    RealUniPoly composed = RealUniPoly::constant(f.coeffs().back());
    for (int k = f.degree() - 1; k >= 0; --k)
      composed = composed * x_plus_c + RealUniPoly::constant(f.coeffs()[k]);
    CHECK(sturm_count_all(composed) == base);
  }
}

TEST_CASE("root isolation separates and captures every root") {
  auto iv = isolate_real_roots(U({-2, 0, 1}));  // +-sqrt(2)
  REQUIRE(iv.size() == 2);
  CHECK(iv[0].second < iv[1].first);
  RealUniPoly f = U({-2, 0, 1});
  for (auto& [lo, hi] : iv) CHECK(f.eval(lo) * f.eval(hi) <= 0);

  CHECK(isolate_real_roots(U({1, 0, 1})).empty());

  auto three = isolate_real_roots(U({0, -1, 0, 1}));  // roots -1, 0, 1
  REQUIRE(three.size() == 3);
  // each interval contains exactly the expected root
  Rat roots[3] = {Rat(-1), Rat(0), Rat(1)};
  for (int i = 0; i < 3; ++i) {
    CHECK(three[i].first <= roots[i]);
    CHECK(roots[i] <= three[i].second);
  }
}

TEST_CASE("isolation agrees with Sturm counting on random inputs") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 150; ++t) {
    std::vector<Rat> c;
    for (int k = 0; k < 6; ++k) c.push_back(random_rat(rng, 30, 6));
    RealUniPoly f(std::move(c));
    if (f.is_zero() || f.degree() < 1) continue;
    auto iv = isolate_real_roots(f);
    CHECK(static_cast<int>(iv.size()) == sturm_count_all(f));
    for (size_t i = 1; i < iv.size(); ++i) CHECK(iv[i - 1].second <= iv[i].first);
  }
}

TEST_CASE("division, gcd and squarefree parts") {
  RealUniPoly f = U({-1, 0, 1});   // (x-1)(x+1)
  RealUniPoly g = U({-1, 1});      // x - 1
  RealUniPoly q, r;
  RealUniPoly::divmod(f, g, &q, &r);
  CHECK(r.is_zero());
  CHECK(q == U({1, 1}));
  CHECK(gcd(f, g) == g.monic());
  // (x-1)^2 (x+2): squarefree part (x-1)(x+2)
  RealUniPoly h = U({-1, 1}) * U({-1, 1}) * U({2, 1});
  RealUniPoly sf = squarefree_part(h);
  CHECK(sf.degree() == 2);
  CHECK(sf.eval(Rat(1)) == 0);
  CHECK(sf.eval(Rat(-2)) == 0);
}

TEST_CASE("existence shortcut agrees with Sturm") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 400; ++t) {
    std::vector<Rat> c;
    int deg = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k <= deg; ++k) c.push_back(random_rat(rng, 25, 5));
    RealUniPoly f(std::move(c));
    if (f.is_zero() || f.degree() < 1) continue;
    CHECK(has_real_root(f) == (sturm_count_all(f) > 0));
  }
}
