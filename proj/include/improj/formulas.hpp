// SPDX-License-Identifier: Apache-2.0
//
// Closed-form imaginary-projection regions for every classified conic case
// and for hyperbolic-initial quadrics, the odd-degree full-plane criterion,
// and the degree-8 boundary-candidate extraction for class 2c.2.

#ifndef IMPROJ_FORMULAS_HPP
#define IMPROJ_FORMULAS_HPP

#include <optional>
#include <vector>

#include "improj/normalize.hpp"
#include "improj/region.hpp"

namespace improj {

// Region of the normal form (normalized coordinates).  Class 2c.2 and
// inexact normalizations come back delegated to the exact oracle.
RegionResult region_conic(const NormalFormResult& nf);

// Region of I(p) in the original coordinates: normalize, take the normal
// form's region and pull it back along the inverse transform.
RegionResult region_of_conic_poly(const MultiPoly& p);

// Region of a hyperbolic-initial quadric in normalized coordinates (exact
// class data; n >= 3).  Low-rank cases reuse the conic formulas, embedded.
Region region_quadric_hyperbolic_nd(const NdNormalFormResult& nf);

struct FullPlaneReport {
  bool full_plane = false;
  int witness_factor = -1;  // index into the supplied factor list, -1 = p
  std::string json() const;
};

// Sufficient criterion only: odd total degree with no real projective root
// of the initial form (checked for p itself or any supplied exact factor).
FullPlaneReport full_plane_odd_degree_check(
    const MultiPoly& p, const std::vector<MultiPoly>& factors = {});

struct BoundaryCandidates {
  MultiPoly octic;                  // odd-multiplicity part of the eliminant
  std::optional<MultiPoly> q1, q2;  // quadratic side branches
  std::vector<MultiPoly> special_lines;

  std::vector<const MultiPoly*> all() const;
  std::string json() const;
};

// Exact boundary candidates for a class-2c.2 conic: the zero set of the
// returned polynomials contains every boundary point of I(p).
BoundaryCandidates boundary_candidates_2c2(const MultiPoly& p);

}  // namespace improj

#endif  // IMPROJ_FORMULAS_HPP
