// SPDX-License-Identifier: Apache-2.0
//
// Root arrangement of binary quadratic forms in P^1, the induced conic
// classes, and hyperbolicity of quadratic initial forms. All predicates are
// decided on coefficients, never on numeric roots.

#ifndef IMPROJ_CLASSIFY_HPP
#define IMPROJ_CLASSIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "improj/poly.hpp"
#include "improj/realroots.hpp"
#include "improj/transform.hpp"

namespace improj {

enum class ArrangementTag {
  DoubleReal,
  TwoDistinctReal,
  DoubleNonReal,
  OneRealOneNonReal,
  ConjugatePair,
  TwoDistinctNonRealNonConjugate,
};

std::string arrangement_str(ArrangementTag tag);

// A root of the quadratic in P^1: either (1:0) or (t:1) with rational t.
struct ProjRoot {
  bool at_infinity = false;
  RatC value;  // meaningful when !at_infinity

  bool is_real() const { return at_infinity || value.im == 0; }
};

struct RootArrangement {
  ArrangementTag tag;
  // Dehomogenized quadratic c0 t^2 + c1 t + c2 (the defining data; predicates
  // are recheckable from it alone).
  RatC c0, c1, c2;
  bool roots_rational = false;
  std::vector<ProjRoot> roots;  // both roots when rational (multiplicity kept)
};

RootArrangement root_arrangement(const BinaryForm& form);

enum class ConicClass { C1a1, C1a2, C1b, C2a1, C2a2, C2b, C2c1, C2c2 };

std::string conic_class_str(ConicClass c);  // "1a.1" ... "2c.2"

// Exact class of a degree-2 bivariate polynomial. The 1a/2a subcase split is
// an outcome of the normalization procedure.
ConicClass conic_class(const MultiPoly& p);

struct HyperbolicityReport {
  bool hyperbolic = false;
  std::optional<RatC> realizing_scalar;  // lambda with lambda*init real
  int n_plus = 0, n_minus = 0, rank = 0; // signature of the real form
};

// Hyperbolic initial form test for quadratics in any dimension: some
// lambda*init is real with rank 1 or signature (k,1) after sign flip.
HyperbolicityReport is_hyperbolic_initial(const MultiPoly& p);

// Symmetric coefficient matrix of a quadratic form (the degree-2 part only).
std::vector<std::vector<RatC>> quadratic_form_matrix(const MultiPoly& quad);

// Exact congruence diagonalization of a rational symmetric matrix; returns
// the diagonal entries d and the invertible S with S^T M S = diag(d).
void congruence_diagonalize(const RatMatrix& m, std::vector<Rat>* diag,
                            RatMatrix* s);

}  // namespace improj

#endif  // IMPROJ_CLASSIFY_HPP
