// SPDX-License-Identifier: Apache-2.0
//
// Builds products of conics whose imaginary-projection complement has exactly
// k strictly convex bounded components: rotated copies of z1 z2 + 2i supply
// 4m unbounded components, and an imaginary-shifted circle factor cuts k of
// them.  Recipes are confirmed by the exact raster verifier.

#ifndef IMPROJ_CONSTRUCT_HPP
#define IMPROJ_CONSTRUCT_HPP

#include <string>
#include <vector>

#include "improj/poly.hpp"
#include "improj/raster.hpp"

namespace improj {

struct ConstructionRecipe {
  int k = 0;
  int m = 0;  // ceil(k/4) rotated factors
  Rat a, b, s;  // circle center (a, b), radius s
  std::vector<MultiPoly> factors;  // m rotated factors then the circle
  MultiPoly polynomial;            // the product
  int degree = 0;                  // 2m + 2
  bool verified = false;
  int verify_resolution = 0;
  std::string json() const;
};

struct ConstructOverrides {
  std::optional<Rat> a, b, s;
  int search_resolution = 220;
};

ConstructionRecipe build_k_components(int k, const ConstructOverrides& o = {});

struct ComponentVerification {
  ComponentReport report;
  int bounded = 0;
  double max_bounded_deviation_px = 0.0;
  std::string json() const;
};

// Rasterizes the complement of the factor union (per-factor exact oracle),
// labels components and measures the convexity deviation.
ComponentVerification verify_components(const std::vector<MultiPoly>& factors,
                                        const RasterSpec& spec);

// Natural window for a recipe: symmetric box containing the circle factor.
RasterSpec recipe_window(const ConstructionRecipe& r, int resolution);

}  // namespace improj

#endif  // IMPROJ_CONSTRUCT_HPP
