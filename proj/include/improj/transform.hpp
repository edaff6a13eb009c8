// SPDX-License-Identifier: Apache-2.0
//
// The group action used throughout: z -> A z + b with A real invertible and
// b a complex translation, extended by a variety-preserving nonzero complex
// scalar.  substitute_affine(p, T) = lambda * p(A z + b).

#ifndef IMPROJ_TRANSFORM_HPP
#define IMPROJ_TRANSFORM_HPP

#include <vector>

#include "improj/poly.hpp"

namespace improj {

using RatMatrix = std::vector<std::vector<Rat>>;

Rat matrix_det(const RatMatrix& a);
RatMatrix matrix_inverse(const RatMatrix& a);  // throws on singular
RatMatrix matrix_mul(const RatMatrix& a, const RatMatrix& b);
std::vector<Rat> matrix_apply(const RatMatrix& a, const std::vector<Rat>& v);
RatMatrix identity_matrix(int n);

struct AffineTransform {
  RatC lambda;             // nonzero
  RatMatrix A;             // n x n, invertible
  std::vector<RatC> b;     // length n

  static AffineTransform identity(int n);

  int dim() const { return static_cast<int>(A.size()); }
  void validate() const;  // det != 0, lambda != 0, shapes consistent

  AffineTransform inverse() const;
  // (this o other): apply `other` to p first, then this.
  AffineTransform after(const AffineTransform& other) const;

  std::vector<RatC> apply_complex(const std::vector<RatC>& z) const;  // Az+b
  std::vector<Rat> imag_shift() const;  // Im(b)
  // The induced map on imaginary parts: y -> A y + Im(b).
  std::vector<Rat> apply_imag(const std::vector<Rat>& y) const;
};

// lambda * p(A z + b); exact, degree preserved.
MultiPoly substitute_affine(const MultiPoly& p, const AffineTransform& t);

// Interval-valued counterpart, used only to report normalizations whose
// matrix entries are irrational (certified enclosures, width <= 2^-64).
struct IntervalTransform {
  RatCI lambda;
  std::vector<std::vector<RatInterval>> A;
  std::vector<RatCI> b;
};

}  // namespace improj

#endif  // IMPROJ_TRANSFORM_HPP
