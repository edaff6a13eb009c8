// SPDX-License-Identifier: Apache-2.0
//
// Exact elimination toolbox: quartic real-root criteria, resultants and
// discriminants of multivariate polynomials with respect to one variable,
// multivariate gcd (primitive PRS), square-free and odd-multiplicity parts,
// and real projective roots of binary forms.

#ifndef IMPROJ_REALROOTS_HPP
#define IMPROJ_REALROOTS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "improj/poly.hpp"
#include "improj/unipoly.hpp"

namespace improj {

struct QuarticCriteria {
  Rat disc, P, R, D;
  bool has_root = false;
};

// Decides whether a4 x^4 + ... + a0 has a real root from the sign pattern of
// (disc, P, R, D): disc<0 -> yes; disc>0 -> yes iff P<0 and D<0; disc=0 ->
// no iff D=R=0 and P>0.
QuarticCriteria quartic_has_real_root(const Rat& a0, const Rat& a1,
                                      const Rat& a2, const Rat& a3,
                                      const Rat& a4);

// Exact polynomial division; throws Error(Domain) when g does not divide f.
MultiPoly exact_divide(const MultiPoly& f, const MultiPoly& g);
bool try_divide(const MultiPoly& f, const MultiPoly& g, MultiPoly* quot);

// Sylvester resultant with respect to variable `var` (f-rows first, so
// Res_x(x-a, x-b) = a-b).  Entries may involve the remaining variables.
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, int var);

// (-1)^(n(n-1)/2) Res(f, f') / lc_var(f), exact in the remaining variables.
MultiPoly discriminant(const MultiPoly& f, int var);

// Rational content: c with f/c integer-coefficient and coprime.
Rat rational_content(const MultiPoly& f);
// f scaled to integer coprime coefficients with positive leading (grlex)
// coefficient; the zero polynomial stays zero. Requires real coefficients.
MultiPoly canonical_primitive(const MultiPoly& f);
// True iff f = c*g for a nonzero rational c (both real, nonzero).
bool proportional_over_q(const MultiPoly& f, const MultiPoly& g);

// gcd of real-coefficient polynomials, canonical-primitive result.
MultiPoly mv_gcd(const MultiPoly& f, const MultiPoly& g);

// Product of the distinct irreducible factors (real coefficients).
MultiPoly squarefree_part_mv(const MultiPoly& f);

// Product of the factors of odd multiplicity (real coefficients); this is the
// part of a discriminant that actually changes sign.
MultiPoly odd_multiplicity_part(const MultiPoly& f);

// Conversion helpers for polynomials univariate in `var` (all other
// variables absent) with real coefficients.
RealUniPoly to_unipoly(const MultiPoly& f, int var);
MultiPoly from_unipoly(const RealUniPoly& f, int var, int nvars);

struct BinaryRealRoot {
  bool has_root = false;
  bool at_infinity = false;          // root (1:0)
  std::optional<Rat> rational_root;  // root (t:1) when t is rational
};

// Real projective roots of a nonzero binary form: dehomogenize, take the gcd
// of real and imaginary parts, Sturm-count it, and test (1:0) separately.
BinaryRealRoot binary_form_has_real_root(const BinaryForm& form);

}  // namespace improj

#endif  // IMPROJ_REALROOTS_HPP
