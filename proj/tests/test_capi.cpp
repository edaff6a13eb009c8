// SPDX-License-Identifier: Apache-2.0
//
// Exercises the supported external surface: the extern-C shared-library API.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "improj/improj.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  improj_string_free(s);
  return out;
}

struct Poly {
  improj_poly* p = nullptr;
  ~Poly() { improj_poly_free(p); }
};

}  // namespace

TEST_CASE("parse, print, classify through the C surface") {
  Poly h;
  REQUIRE(improj_poly_parse("z1^2 + i*z2^2 + z2", 2, &h.p) == IMPROJ_OK);
  CHECK(improj_poly_nvars(h.p) == 2);
  CHECK(improj_poly_degree(h.p) == 2);
  char* text = nullptr;
  REQUIRE(improj_poly_str(h.p, &text) == IMPROJ_OK);
  CHECK(take(text) == "z1^2 + i*z2^2 + z2");
  char* cls = nullptr;
  REQUIRE(improj_classify(h.p, &cls) == IMPROJ_OK);
  CHECK(take(cls) == "2c.2");
}

TEST_CASE("syntax errors carry status and offset message") {
  improj_poly* p = nullptr;
  CHECK(improj_poly_parse("z1^^2", 2, &p) == IMPROJ_ERROR_SYNTAX);
  CHECK(std::string(improj_last_error()).find("offset 3") != std::string::npos);
  CHECK(improj_poly_parse(nullptr, 2, &p) == IMPROJ_ERROR_NULL_ARGUMENT);
}

TEST_CASE("preconditions map to the dedicated status") {
  Poly lin;
  REQUIRE(improj_poly_parse("z1 + 1", 2, &lin.p) == IMPROJ_OK);
  char* cls = nullptr;
  CHECK(improj_classify(lin.p, &cls) == IMPROJ_ERROR_PRECONDITION);
}

TEST_CASE("membership and region verdicts round-trip") {
  Poly circle;
  REQUIRE(improj_poly_parse("z1^2 + z2^2 + 1", 2, &circle.p) == IMPROJ_OK);
  int verdict = -1;
  REQUIRE(improj_member(circle.p, "0,0", 0, &verdict, nullptr) == IMPROJ_OK);
  CHECK(verdict == 0);
  REQUIRE(improj_member(circle.p, "1,0", 0, &verdict, nullptr) == IMPROJ_OK);
  CHECK(verdict == 1);
  char* trace = nullptr;
  REQUIRE(improj_member(circle.p, "1/3,0", 1, &verdict, &trace) == IMPROJ_OK);
  std::string tr = take(trace);
  CHECK(tr.find("branch") != std::string::npos);

  improj_region* region = nullptr;
  REQUIRE(improj_region_conic(circle.p, &region) == IMPROJ_OK);
  CHECK(improj_region_delegated(region) == 0);
  REQUIRE(improj_region_member(region, "0,0", &verdict) == IMPROJ_OK);
  CHECK(verdict == 0);
  REQUIRE(improj_region_member(region, "2,0", &verdict) == IMPROJ_OK);
  CHECK(verdict == 1);
  char* json = nullptr;
  REQUIRE(improj_region_json(region, &json) == IMPROJ_OK);
  CHECK(take(json).find("clauses") != std::string::npos);
  improj_region_free(region);
}

TEST_CASE("boundary candidates and normalization emit JSON") {
  Poly q;
  REQUIRE(improj_poly_parse("z1^2 + i*z2^2 + 1/4i", 2, &q.p) == IMPROJ_OK);
  char* out = nullptr;
  REQUIRE(improj_boundary(q.p, &out) == IMPROJ_OK);
  std::string text = take(out);
  CHECK(text.find("64*y1^8") != std::string::npos);
  REQUIRE(improj_normalize(q.p, &out) == IMPROJ_OK);
  CHECK(take(out).find("\"class\":\"2c.2\"") != std::string::npos);

  Poly wrong;
  REQUIRE(improj_poly_parse("z1^2 + z2^2 + 1", 2, &wrong.p) == IMPROJ_OK);
  CHECK(improj_boundary(wrong.p, &out) == IMPROJ_ERROR_PRECONDITION);
}

TEST_CASE("rasters through the C surface stay consistent with membership") {
  Poly p;
  REQUIRE(improj_poly_parse("z1^2 + z2^2 + 1", 2, &p.p) == IMPROJ_OK);
  improj_bitmap* bm = nullptr;
  REQUIRE(improj_raster_conic(p.p, "-2,2,-2,2", 64, 64, &bm) == IMPROJ_OK);
  char* comps = nullptr;
  REQUIRE(improj_bitmap_components(bm, 0, &comps) == IMPROJ_OK);
  std::string rep = take(comps);
  CHECK(rep.find("\"bounded\":1") != std::string::npos);
  improj_bitmap_free(bm);
  CHECK(improj_raster_conic(p.p, "2,-2,-2,2", 64, 64, &bm) ==
        IMPROJ_ERROR_PRECONDITION);  // inverted window
}

TEST_CASE("certificates verify through the C surface") {
  Poly p;
  REQUIRE(improj_poly_parse("z1^2 + 2i*z2", 2, &p.p) == IMPROJ_OK);
  char* out = nullptr;
  REQUIRE(improj_verify_certificates(p.p, 300, 9, &out) == IMPROJ_OK);
  CHECK(take(out).find("\"ok\":true") != std::string::npos);
}
