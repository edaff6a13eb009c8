// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "improj/rational.hpp"

using namespace improj;

TEST_CASE("rational parsing accepts p/q and rejects decimals") {
  CHECK(parse_rat("3/4") == Rat(3, 4));
  CHECK(parse_rat("-12") == Rat(-12));
  CHECK(parse_rat("6/4") == Rat(3, 2));  // canonicalized
  CHECK_THROWS_AS(parse_rat("0.5"), Error);
  CHECK_THROWS_AS(parse_rat("1/0"), Error);
  CHECK_THROWS_AS(parse_rat(""), Error);
  CHECK_THROWS_AS(parse_rat("2/3/4"), Error);
}

TEST_CASE("complex arithmetic is exact and closed") {
  RatC a(Rat(1, 2), Rat(-3, 4));
  RatC b(Rat(2), Rat(5));
  CHECK((a * b).re == Rat(1, 2) * 2 - Rat(-3, 4) * 5);
  CHECK((a * a.inv()) == RatC(1));
  CHECK(a.conj().im == Rat(3, 4));
  CHECK(a.norm2() == Rat(1, 4) + Rat(9, 16));
  CHECK((a / b) * b == a);
  CHECK_THROWS_AS(RatC().inv(), Error);
}

TEST_CASE("rational and complex square roots") {
  Rat r;
  CHECK(rational_sqrt(Rat(9, 4), &r));
  CHECK(r == Rat(3, 2));
  CHECK_FALSE(rational_sqrt(Rat(2), &r));
  CHECK_FALSE(rational_sqrt(Rat(-1), &r));

  RatC root;
  CHECK(complex_sqrt(RatC(Rat(0), Rat(2)), &root));  // sqrt(2i) = 1+i
  CHECK(root == RatC(Rat(1), Rat(1)));
  CHECK(complex_sqrt(RatC(Rat(-4)), &root));
  CHECK(root == RatC(Rat(0), Rat(2)));
  CHECK(complex_sqrt(RatC(Rat(3), Rat(4)), &root));  // sqrt(3+4i) = 2+i
  CHECK(root * root == RatC(Rat(3), Rat(4)));
  CHECK_FALSE(complex_sqrt(RatC(Rat(1), Rat(2)), &root));
}

TEST_CASE("interval sqrt is a tight directed enclosure") {
  Rat limit = Rat(1, mpz_class(mpz_class(1) << 64));
  for (long v : {2L, 3L, 5L, 7L, 1234567L}) {
    RatInterval iv = interval_sqrt(Rat(v, 3), 64);
    CHECK(iv.width() <= limit);
    CHECK(iv.lo * iv.lo <= Rat(v, 3));
    CHECK(iv.hi * iv.hi >= Rat(v, 3));
  }
  CHECK(interval_sqrt(Rat(0), 64).is_point());
}

TEST_CASE("interval multiplication contains products") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-50, 50);
  for (int t = 0; t < 200; ++t) {
    Rat a(d(rng), 7), b(d(rng), 5), wa(1, 1000), wb(1, 900);
    a.canonicalize();
    b.canonicalize();
    RatInterval ia(a - wa, a + wa), ib(b - wb, b + wb);
    RatInterval prod = ia * ib;
    CHECK(prod.lo <= a * b);
    CHECK(prod.hi >= a * b);
  }
}
