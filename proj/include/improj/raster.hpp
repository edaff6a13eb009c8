// SPDX-License-Identifier: Apache-2.0
//
// Grid evaluation of membership into bitmaps, 4-connected component labeling
// of the complement, boundary-pixel extraction and candidate-curve coverage.
// Exact mode samples cell centers with the exact oracle or a region; output
// is deterministic for a fixed spec, independent of the thread count.

#ifndef IMPROJ_RASTER_HPP
#define IMPROJ_RASTER_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "improj/formulas.hpp"
#include "improj/oracle.hpp"
#include "improj/region.hpp"

namespace improj {

struct RasterSpec {
  Rat x_lo = -2, x_hi = 2, y_lo = -2, y_hi = 2;  // window in y-space
  int cols = 400, rows = 400;
  int threads = 0;  // 0 = hardware concurrency

  Rat center_x(int i) const {
    return x_lo + Rat(2 * i + 1) * (x_hi - x_lo) / Rat(2 * cols);
  }
  Rat center_y(int j) const {
    return y_hi - Rat(2 * j + 1) * (y_hi - y_lo) / Rat(2 * rows);
  }
  double px_x() const;  // pixel width as double (for reports only)
};

struct Bitmap {
  int cols = 0, rows = 0;
  std::vector<uint8_t> bits;  // 1 = y in I(p); row-major, row 0 at y_hi

  bool at(int i, int j) const { return bits[size_t(j) * cols + i] != 0; }
  void set(int i, int j, bool v) { bits[size_t(j) * cols + i] = v ? 1 : 0; }
  void write_pgm(const std::string& path) const;
};

// Exact-mode rasters.
Bitmap rasterize_conic(const MultiPoly& p, const RasterSpec& spec);
Bitmap rasterize_factors(const std::vector<MultiPoly>& factors,
                         const RasterSpec& spec);
Bitmap rasterize_region(const Region& region, const RasterSpec& spec);
// Advisory float mode for arbitrary bivariate polynomials.
Bitmap rasterize_float(const MultiPoly& p, const RasterSpec& spec,
                       double tol = 1e-9);

struct ComponentInfo {
  long pixels = 0;
  int min_i = 0, max_i = 0, min_j = 0, max_j = 0;
  bool edge_contact = false;
  double convexity_deviation_px = 0.0;
  std::pair<Rat, Rat> representative;  // a cell center inside the component
};

struct ComponentReport {
  std::vector<ComponentInfo> components;
  int bounded = 0;
  int unbounded = 0;
  std::string json() const;
};

// 4-connected labeling of complement (polarity=false) or member pixels.
ComponentReport connected_components(const Bitmap& bm, const RasterSpec& spec,
                                     bool member_polarity = false);

// Member pixels with a non-member 4-neighbour.
std::vector<std::pair<int, int>> boundary_pixels(const Bitmap& bm);

struct CoverageReport {
  long boundary_count = 0;
  long covered = 0;
  double coverage = 1.0;
  std::string json() const;
};

// Fraction of boundary pixels within tol_px of the zero set of some
// candidate, the zero set being localized by exact per-pixel sign changes.
CoverageReport check_against_candidates(
    const Bitmap& bm, const std::vector<std::pair<int, int>>& boundary,
    const RasterSpec& spec, const std::vector<const MultiPoly*>& candidates,
    double tol_px);

// Piecewise-linear overlay of candidate zero sets on top of the bitmap.
void write_svg(const std::string& path, const Bitmap& bm,
               const RasterSpec& spec,
               const std::vector<const MultiPoly*>& candidates);

}  // namespace improj

#endif  // IMPROJ_RASTER_HPP
