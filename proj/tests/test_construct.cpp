// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "improj/construct.hpp"

using namespace improj;

TEST_CASE("degrees follow 2*ceil(k/4) + 2") {
  // overrides skip the search; the degree law is structural
  ConstructOverrides o;
  o.a = Rat(0);
  o.b = Rat(0);
  o.s = Rat(3, 2);
  o.search_resolution = 60;  // cheap confirmation raster, outcome ignored
  for (int k = 1; k <= 16; ++k) {
    ConstructionRecipe r = build_k_components(k, o);
    int m = (k + 3) / 4;
    CHECK(r.m == m);
    CHECK(r.degree == 2 * m + 2);
    CHECK(static_cast<int>(r.factors.size()) == m + 1);
    // the circle factor is (z1 - ia)^2 + (z2 - ib)^2 + s^2
    MultiPoly circle = r.factors.back();
    CHECK(circle.coeff({0, 0}) == RatC(Rat(9, 4) - Rat(0)));
  }
}

TEST_CASE("a single rotated factor alone has four unbounded components") {
  ConstructOverrides o;
  o.a = Rat(0);
  o.b = Rat(0);
  o.s = Rat(3, 2);
  ConstructionRecipe r = build_k_components(4, o);
  std::vector<MultiPoly> g_only(r.factors.begin(), r.factors.end() - 1);
  RasterSpec spec;
  spec.x_lo = spec.y_lo = Rat(-4);
  spec.x_hi = spec.y_hi = Rat(4);
  spec.cols = spec.rows = 400;
  ComponentVerification v = verify_components(g_only, spec);
  CHECK(v.report.bounded == 0);
  CHECK(v.report.unbounded == 4);
}

TEST_CASE("the circle factor alone pins one bounded convex component") {
  MultiPoly circle = parse_poly("z1^2 + z2^2 + 1", 2);
  RasterSpec spec;
  spec.x_lo = spec.y_lo = Rat(-4);
  spec.x_hi = spec.y_hi = Rat(4);
  spec.cols = spec.rows = 400;
  ComponentVerification v = verify_components({circle}, spec);
  CHECK(v.bounded == 1);
  CHECK(v.max_bounded_deviation_px <= 1.0);
}

TEST_CASE("a frozen verified recipe is stable under resolution doubling") {
  // parameters found by the deterministic search (k = 4)
  ConstructOverrides o;
  o.a = Rat(0);
  o.b = Rat(0);
  o.s = Rat(419, 256);
  ConstructionRecipe r = build_k_components(4, o);
  ComponentVerification at400 = verify_components(r.factors, recipe_window(r, 400));
  ComponentVerification at800 = verify_components(r.factors, recipe_window(r, 800));
  CHECK(at400.bounded == 4);
  CHECK(at800.bounded == 4);
  CHECK(at400.max_bounded_deviation_px <= 2.0);
  CHECK(at800.max_bounded_deviation_px <= 2.0);
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(build_k_components(0), Error);
  CHECK_THROWS_AS(
      verify_components({parse_poly("z1^3", 2)}, RasterSpec{}), Error);
}
