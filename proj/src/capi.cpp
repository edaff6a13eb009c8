// SPDX-License-Identifier: Apache-2.0

#include "improj/improj.h"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <cstring>
#include <string>

#include "improj/acceptance.hpp"
#include "improj/certify.hpp"
#include "improj/construct.hpp"
#include "improj/formulas.hpp"
#include "improj/oracle.hpp"
#include "improj/raster.hpp"

using namespace improj;

struct improj_poly {
  MultiPoly rep;
};

struct improj_region {
  RegionResult rep;
};

struct improj_bitmap {
  Bitmap bm;
  RasterSpec spec;
};

namespace {

thread_local std::string g_last_error;

improj_status to_status(const Error& e) {
  g_last_error = e.what();
  switch (e.code()) {
    case ErrorCode::Syntax: return IMPROJ_ERROR_SYNTAX;
    case ErrorCode::Precondition: return IMPROJ_ERROR_PRECONDITION;
    case ErrorCode::Domain: return IMPROJ_ERROR_DOMAIN;
    case ErrorCode::Internal: return IMPROJ_ERROR_INTERNAL;
  }
  return IMPROJ_ERROR_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
improj_status guard(F&& fn) {
  try {
    fn();
    return IMPROJ_OK;
  } catch (const Error& e) {
    return to_status(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return IMPROJ_ERROR_INTERNAL;
  }
}

std::vector<Rat> parse_point(const char* text, size_t expected) {
  if (!text) throw Error(ErrorCode::Syntax, "missing point");
  std::vector<Rat> out;
  std::string s(text);
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    std::string tok =
        s.substr(pos, comma == std::string::npos ? std::string::npos
                                                 : comma - pos);
    out.push_back(parse_rat(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (expected && out.size() != expected)
    throw Error(ErrorCode::Precondition, "point must have " +
                                             std::to_string(expected) +
                                             " coordinates");
  return out;
}

RasterSpec parse_window(const char* window, int cols, int rows) {
  RasterSpec spec;
  if (window) {
    std::vector<Rat> w = parse_point(window, 4);
    spec.x_lo = w[0];
    spec.x_hi = w[1];
    spec.y_lo = w[2];
    spec.y_hi = w[3];
    if (spec.x_lo >= spec.x_hi || spec.y_lo >= spec.y_hi)
      throw Error(ErrorCode::Precondition, "window must be nonempty");
  }
  if (cols < 1 || rows < 1)
    throw Error(ErrorCode::Precondition, "resolution must be positive");
  spec.cols = cols;
  spec.rows = rows;
  return spec;
}

std::vector<MultiPoly> parse_factors(const char* text, int nvars) {
  if (!text) throw Error(ErrorCode::Syntax, "missing factor list");
  std::vector<MultiPoly> out;
  std::string s(text);
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t semi = s.find(';', pos);
    std::string tok = s.substr(
        pos, semi == std::string::npos ? std::string::npos : semi - pos);
    if (!tok.empty()) out.push_back(parse_poly(tok, nvars));
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  if (out.empty()) throw Error(ErrorCode::Syntax, "empty factor list");
  return out;
}

}  // namespace

extern "C" {

const char* improj_last_error(void) { return g_last_error.c_str(); }

void improj_string_free(char* s) { std::free(s); }

improj_status improj_poly_parse(const char* text, int nvars,
                                improj_poly** out) {
  if (!text || !out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] { *out = new improj_poly{parse_poly(text, nvars)}; });
}

improj_status improj_poly_from_json(const char* json_text, improj_poly** out) {
  if (!json_text || !out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] { *out = new improj_poly{MultiPoly::from_json(json_text)}; });
}

void improj_poly_free(improj_poly* p) { delete p; }

improj_status improj_poly_str(const improj_poly* p, char** out) {
  if (!p || !out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] { *out = dup_string(p->rep.str()); });
}

improj_status improj_poly_json(const improj_poly* p, char** out) {
  if (!p || !out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] { *out = dup_string(p->rep.json()); });
}

int improj_poly_nvars(const improj_poly* p) { return p ? p->rep.nvars() : 0; }

int improj_poly_degree(const improj_poly* p) {
  if (!p) return -1;
  return p->rep.degree().value_or(-1);
}

improj_status improj_classify(const improj_poly* p, char** class_out) {
  if (!p || !class_out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard(
      [&] { *class_out = dup_string(conic_class_str(conic_class(p->rep))); });
}

improj_status improj_normalize(const improj_poly* p, char** json_out) {
  if (!p || !json_out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] { *json_out = dup_string(normalize_conic(p->rep).json()); });
}

improj_status improj_normalize_nd(const improj_poly* p, char** json_out) {
  if (!p || !json_out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard(
      [&] { *json_out = dup_string(normalize_quadric_nd(p->rep).json()); });
}

improj_status improj_hyperbolicity(const improj_poly* p, char** json_out) {
  if (!p || !json_out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    HyperbolicityReport rep = is_hyperbolic_initial(p->rep);
    nlohmann::json out;
    out["hyperbolic"] = rep.hyperbolic;
    if (rep.realizing_scalar)
      out["lambda"] = {{"re", rat_str(rep.realizing_scalar->re)},
                       {"im", rat_str(rep.realizing_scalar->im)}};
    out["n_plus"] = rep.n_plus;
    out["n_minus"] = rep.n_minus;
    out["rank"] = rep.rank;
    *json_out = dup_string(out.dump());
  });
}

improj_status improj_region_conic(const improj_poly* p, improj_region** out) {
  if (!p || !out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] { *out = new improj_region{region_of_conic_poly(p->rep)}; });
}

improj_status improj_region_nd(const improj_poly* p, improj_region** out) {
  if (!p || !out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    NdNormalFormResult nf = normalize_quadric_nd(p->rep);
    RegionResult rr;
    Region r = region_quadric_hyperbolic_nd(nf);
    if (nf.exact) {
      rr.region = r.pulled_back(nf.transform->inverse());
    } else {
      rr.delegated = true;
      rr.reason = "normalizing transform is irrational; region is exact only "
                  "in normalized coordinates";
      rr.region = r;
    }
    *out = new improj_region{std::move(rr)};
  });
}

void improj_region_free(improj_region* r) { delete r; }

improj_status improj_region_json(const improj_region* r, char** out) {
  if (!r || !out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] { *out = dup_string(r->rep.json()); });
}

int improj_region_delegated(const improj_region* r) {
  return r && r->rep.delegated ? 1 : 0;
}

improj_status improj_region_member(const improj_region* r, const char* point,
                                   int* verdict) {
  if (!r || !point || !verdict) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    if (r->rep.delegated)
      throw Error(ErrorCode::Precondition,
                  "region is delegated; use the membership oracle");
    std::vector<Rat> y =
        parse_point(point, static_cast<size_t>(r->rep.region.nvars));
    *verdict = r->rep.region.member(y) ? 1 : 0;
  });
}

improj_status improj_full_plane_check(const improj_poly* p,
                                      const char* factors, int nvars,
                                      char** json_out) {
  if (!p || !json_out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    std::vector<MultiPoly> fs;
    if (factors) fs = parse_factors(factors, nvars > 0 ? nvars : 2);
    *json_out = dup_string(full_plane_odd_degree_check(p->rep, fs).json());
  });
}

improj_status improj_member(const improj_poly* p, const char* point,
                            int want_trace, int* verdict, char** trace_json) {
  if (!p || !point || !verdict) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    std::vector<Rat> y = parse_point(point, 2);
    MembershipTrace trace;
    bool v = member_conic_exact(p->rep, y, want_trace ? &trace : nullptr);
    *verdict = v ? 1 : 0;
    if (want_trace && trace_json) *trace_json = dup_string(trace.json());
  });
}

improj_status improj_member_nd(const improj_poly* p, const char* point,
                               double tol, int* verdict) {
  if (!p || !point || !verdict) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    std::vector<Rat> y =
        parse_point(point, static_cast<size_t>(p->rep.nvars()));
    *verdict = member_quadric_numeric(p->rep, y, tol) ? 1 : 0;
  });
}

improj_status improj_boundary(const improj_poly* p, char** json_out) {
  if (!p || !json_out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard(
      [&] { *json_out = dup_string(boundary_candidates_2c2(p->rep).json()); });
}

improj_status improj_certificates(const improj_poly* p, char** json_out) {
  if (!p || !json_out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    auto certs = certificates_for_poly(p->rep);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : certs) arr.push_back(nlohmann::json::parse(c.json()));
    *json_out = dup_string(arr.dump());
  });
}

improj_status improj_verify_certificates(const improj_poly* p, int samples,
                                         unsigned long long seed,
                                         char** json_out) {
  if (!p || !json_out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    auto certs = certificates_for_poly(p->rep);
    CertVerification v = verify_certificate(certs, p->rep, samples, seed);
    *json_out = dup_string(v.json());
  });
}

improj_status improj_rigid(const improj_poly* h, const char* point, int lines,
                           unsigned long long seed, char** json_out) {
  if (!h || !point || !json_out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    std::vector<Rat> pt = parse_point(point, 2);
    RigidConvexityReport rep =
        rigid_convexity_line_test(h->rep, pt, lines, seed);
    *json_out = dup_string(rep.json());
  });
}

improj_status improj_construct(int k, const char* a, const char* b,
                               const char* s, int search_resolution,
                               char** json_out) {
  if (!json_out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    ConstructOverrides o;
    if (a) o.a = parse_rat(a);
    if (b) o.b = parse_rat(b);
    if (s) o.s = parse_rat(s);
    if (search_resolution > 0) o.search_resolution = search_resolution;
    ConstructionRecipe r = build_k_components(k, o);
    *json_out = dup_string(r.json());
  });
}

improj_status improj_verify_components(const char* factors, const char* window,
                                       int cols, int rows, char** json_out) {
  if (!factors || !json_out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    std::vector<MultiPoly> fs = parse_factors(factors, 2);
    RasterSpec spec = parse_window(window, cols, rows);
    ComponentVerification v = verify_components(fs, spec);
    *json_out = dup_string(v.json());
  });
}

improj_status improj_raster_conic(const improj_poly* p, const char* window,
                                  int cols, int rows, improj_bitmap** out) {
  if (!p || !out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    RasterSpec spec = parse_window(window, cols, rows);
    *out = new improj_bitmap{rasterize_conic(p->rep, spec), spec};
  });
}

improj_status improj_raster_factors(const char* factors, const char* window,
                                    int cols, int rows, improj_bitmap** out) {
  if (!factors || !out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    std::vector<MultiPoly> fs = parse_factors(factors, 2);
    RasterSpec spec = parse_window(window, cols, rows);
    *out = new improj_bitmap{rasterize_factors(fs, spec), spec};
  });
}

improj_status improj_raster_region(const improj_region* r, const char* window,
                                   int cols, int rows, improj_bitmap** out) {
  if (!r || !out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    if (r->rep.delegated)
      throw Error(ErrorCode::Precondition, "cannot raster a delegated region");
    RasterSpec spec = parse_window(window, cols, rows);
    *out = new improj_bitmap{rasterize_region(r->rep.region, spec), spec};
  });
}

improj_status improj_raster_float(const improj_poly* p, const char* window,
                                  int cols, int rows, improj_bitmap** out) {
  if (!p || !out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    RasterSpec spec = parse_window(window, cols, rows);
    *out = new improj_bitmap{rasterize_float(p->rep, spec), spec};
  });
}

void improj_bitmap_free(improj_bitmap* bm) { delete bm; }

improj_status improj_bitmap_write_pgm(const improj_bitmap* bm,
                                      const char* path) {
  if (!bm || !path) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] { bm->bm.write_pgm(path); });
}

improj_status improj_bitmap_write_svg(const improj_bitmap* bm,
                                      const improj_poly* candidate_source,
                                      const char* path) {
  if (!bm || !path) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    std::vector<const MultiPoly*> cands;
    BoundaryCandidates bc;
    if (candidate_source) {
      bc = boundary_candidates_2c2(candidate_source->rep);
      cands = bc.all();
    }
    write_svg(path, bm->bm, bm->spec, cands);
  });
}

improj_status improj_bitmap_components(const improj_bitmap* bm,
                                       int member_polarity, char** json_out) {
  if (!bm || !json_out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    ComponentReport rep =
        connected_components(bm->bm, bm->spec, member_polarity != 0);
    *json_out = dup_string(rep.json());
  });
}

improj_status improj_bitmap_coverage(const improj_bitmap* bm,
                                     const improj_poly* candidate_source,
                                     double tol_px, char** json_out) {
  if (!bm || !candidate_source || !json_out) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    BoundaryCandidates bc = boundary_candidates_2c2(candidate_source->rep);
    auto bps = boundary_pixels(bm->bm);
    CoverageReport rep =
        check_against_candidates(bm->bm, bps, bm->spec, bc.all(), tol_px);
    *json_out = dup_string(rep.json());
  });
}

improj_status improj_selftest(int only, char** json_out, int* all_pass) {
  if (!json_out || !all_pass) return IMPROJ_ERROR_NULL_ARGUMENT;
  return guard([&] {
    nlohmann::json arr = nlohmann::json::array();
    bool ok = run_acceptance(
        [&](const CriterionResult& r) {
          arr.push_back({{"id", r.id},
                         {"name", r.name},
                         {"pass", r.pass},
                         {"details", r.details},
                         {"seconds", r.seconds}});
        },
        only);
    nlohmann::json out;
    out["criteria"] = std::move(arr);
    out["all_pass"] = ok;
    *all_pass = ok ? 1 : 0;
    *json_out = dup_string(out.dump());
  });
}

}  // extern "C"
