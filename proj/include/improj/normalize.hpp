// SPDX-License-Identifier: Apache-2.0
//
// Constructive reduction of conics (and n-dimensional quadratics with
// hyperbolic initial form) to normal forms, recording the transform.  The
// class tag is always exact; the transform is exact whenever the required
// root data is rational and a certified interval enclosure otherwise.

#ifndef IMPROJ_NORMALIZE_HPP
#define IMPROJ_NORMALIZE_HPP

#include <optional>
#include <string>

#include "improj/classify.hpp"
#include "improj/transform.hpp"

namespace improj {

struct NormalFormResult {
  ConicClass cls;
  bool exact = false;

  // Exact path: substitute_affine(p, transform) == normal_form, term for term.
  std::optional<AffineTransform> transform;
  std::optional<MultiPoly> normal_form;
  std::optional<RatC> gamma;
  std::optional<RatC> alpha;  // classes 2b, 2c.2

  // Interval path (irrational root data): certified enclosures only.
  std::optional<IntervalTransform> itransform;
  std::optional<RatCI> igamma;
  std::optional<RatCI> ialpha;

  std::string json() const;
};

NormalFormResult normalize_conic(const MultiPoly& p);

// n >= 3 quadratic with hyperbolic initial form, reduced to the parameter
// cases of the classification: (a) homogeneous, (b) one real linear
// direction, (c)/(d) full-space cases, (e) gamma != 0.
enum class NdCase { A, B, C, D, E };
std::string nd_case_str(NdCase c);

struct NdNormalFormResult {
  NdCase nd_case;
  bool exact = false;
  int n = 0;      // ambient dimension
  int j = 0;      // positive inertia count of the initial form (rank = j+1,
                  // or j=1 with rank 1 for the z1^2 shape)
  bool rank_one = false;
  std::optional<AffineTransform> transform;  // exact path
  std::optional<MultiPoly> normal_form;
  std::optional<RatC> gamma;     // case E
  std::optional<RatC> alpha_nd;  // case C coefficient (non-real)
  int linear_var = -1;  // cases B/C/D: index of the surviving linear variable

  std::string json() const;
};

NdNormalFormResult normalize_quadric_nd(const MultiPoly& p);

}  // namespace improj

#endif  // IMPROJ_NORMALIZE_HPP
