/* SPDX-License-Identifier: Apache-2.0
 *
 * C API of the imaginary-projection toolkit.  Opaque handles, integer status
 * codes, JSON strings for structured results.  Strings returned through
 * char** are heap-allocated; release them with improj_string_free.
 */

#ifndef IMPROJ_IMPROJ_H
#define IMPROJ_IMPROJ_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  IMPROJ_OK = 0,
  IMPROJ_ERROR_SYNTAX = 1,
  IMPROJ_ERROR_PRECONDITION = 2,
  IMPROJ_ERROR_DOMAIN = 3,
  IMPROJ_ERROR_INTERNAL = 4,
  IMPROJ_ERROR_NULL_ARGUMENT = 5
} improj_status;

typedef struct improj_poly improj_poly;
typedef struct improj_region improj_region;
typedef struct improj_bitmap improj_bitmap;

/* Message of the last failure on this thread. */
const char* improj_last_error(void);
void improj_string_free(char* s);

/* ------------------------------------------------------------------ polys */

/* Grammar: variables z1..zN, imaginary unit i, rationals p/q, complex
 * literals (a+bi), operators + - * ^ with non-negative integer exponents. */
improj_status improj_poly_parse(const char* text, int nvars,
                                improj_poly** out);
improj_status improj_poly_from_json(const char* json_text, improj_poly** out);
void improj_poly_free(improj_poly* p);
improj_status improj_poly_str(const improj_poly* p, char** out);
improj_status improj_poly_json(const improj_poly* p, char** out);
int improj_poly_nvars(const improj_poly* p);
int improj_poly_degree(const improj_poly* p); /* -1 for the zero polynomial */

/* --------------------------------------------------------- classification */

improj_status improj_classify(const improj_poly* p, char** class_out);
improj_status improj_normalize(const improj_poly* p, char** json_out);
improj_status improj_normalize_nd(const improj_poly* p, char** json_out);
improj_status improj_hyperbolicity(const improj_poly* p, char** json_out);

/* ----------------------------------------------------------------- regions */

improj_status improj_region_conic(const improj_poly* p, improj_region** out);
improj_status improj_region_nd(const improj_poly* p, improj_region** out);
void improj_region_free(improj_region* r);
improj_status improj_region_json(const improj_region* r, char** out);
int improj_region_delegated(const improj_region* r);
/* point: comma-separated exact rationals, e.g. "1/3,0". verdict: 0/1. */
improj_status improj_region_member(const improj_region* r, const char* point,
                                   int* verdict);

/* Odd-degree full-plane criterion; factors: ';'-separated list or NULL. */
improj_status improj_full_plane_check(const improj_poly* p,
                                      const char* factors, int nvars,
                                      char** json_out);

/* ----------------------------------------------------------------- oracle */

improj_status improj_member(const improj_poly* p, const char* point,
                            int want_trace, int* verdict, char** trace_json);
improj_status improj_member_nd(const improj_poly* p, const char* point,
                               double tol, int* verdict);

/* --------------------------------------------------- boundary candidates */

improj_status improj_boundary(const improj_poly* p, char** json_out);

/* ----------------------------------------------------------- certificates */

improj_status improj_certificates(const improj_poly* p, char** json_out);
improj_status improj_verify_certificates(const improj_poly* p, int samples,
                                         unsigned long long seed,
                                         char** json_out);
improj_status improj_rigid(const improj_poly* h_in_y, const char* point,
                           int lines, unsigned long long seed,
                           char** json_out);

/* ------------------------------------------------------------ construction */

/* a/b/s: exact rationals overriding the search, or NULL. */
improj_status improj_construct(int k, const char* a, const char* b,
                               const char* s, int search_resolution,
                               char** json_out);
improj_status improj_verify_components(const char* factors, const char* window,
                                       int cols, int rows, char** json_out);

/* ------------------------------------------------------------------ raster */

/* window: "x_lo,x_hi,y_lo,y_hi" with exact rationals. */
improj_status improj_raster_conic(const improj_poly* p, const char* window,
                                  int cols, int rows, improj_bitmap** out);
improj_status improj_raster_factors(const char* factors, const char* window,
                                    int cols, int rows, improj_bitmap** out);
improj_status improj_raster_region(const improj_region* r, const char* window,
                                   int cols, int rows, improj_bitmap** out);
improj_status improj_raster_float(const improj_poly* p, const char* window,
                                  int cols, int rows, improj_bitmap** out);
void improj_bitmap_free(improj_bitmap* bm);
improj_status improj_bitmap_write_pgm(const improj_bitmap* bm,
                                      const char* path);
/* candidate_source: class-2c.2 conic whose boundary candidates are drawn on
 * top, or NULL for no overlay. */
improj_status improj_bitmap_write_svg(const improj_bitmap* bm,
                                      const improj_poly* candidate_source,
                                      const char* path);
improj_status improj_bitmap_components(const improj_bitmap* bm,
                                       int member_polarity, char** json_out);
improj_status improj_bitmap_coverage(const improj_bitmap* bm,
                                     const improj_poly* candidate_source,
                                     double tol_px, char** json_out);

/* ---------------------------------------------------------------- selftest */

/* only: criterion id, or 0 for the full suite. */
improj_status improj_selftest(int only, char** json_out, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* IMPROJ_IMPROJ_H */
