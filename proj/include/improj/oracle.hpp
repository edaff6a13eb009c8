// SPDX-License-Identifier: Apache-2.0
//
// Exact decision of y in I(p) for complex conics at rational points, by
// eliminating x1 from the imaginary part (linear after leading-coefficient
// scaling) and Sturm-counting the cleared polynomial in x2.  Every closed
// form in the toolkit is validated against this oracle.

#ifndef IMPROJ_ORACLE_HPP
#define IMPROJ_ORACLE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "improj/poly.hpp"
#include "improj/realroots.hpp"
#include "improj/unipoly.hpp"

namespace improj {

struct MembershipTrace {
  std::string branch;  // generic-quartic | L-constant | L-zero | z1z2-linear...
  bool swapped = false;
  RealUniPoly L, M, R;  // eliminated data in x2 (empty when unused)
  int root_count = 0;
  std::optional<std::pair<Rat, Rat>> witness_x2;
  std::optional<QuarticCriteria> criteria;  // when R is genuinely quartic

  std::string json() const;
};

// True iff there is a real x with p_re(x,y) = p_im(x,y) = 0. Requires total
// degree exactly 2 and a rational point.
bool member_conic_exact(const MultiPoly& p, const std::vector<Rat>& y,
                        MembershipTrace* trace = nullptr);

// Precompiled membership test for raster scans: the elimination is done once
// symbolically in y; each query evaluates a handful of small polynomials and
// runs the quartic criteria.  Falls back to member_conic_exact on the
// measure-zero degenerate set.  Exact.
class FastConicMembership {
 public:
  explicit FastConicMembership(const MultiPoly& p);
  bool member(const Rat& y1, const Rat& y2) const;

 private:
  struct Entry {
    std::vector<std::pair<ExpVec, Rat>> terms;  // exponents over (y1, y2)
    Rat eval(const std::vector<Rat>& pow1, const std::vector<Rat>& pow2) const;
  };
  Entry compile(const MultiPoly& q) const;  // q in (x2[, y1, y2]) -> coeff rows

  MultiPoly original_;
  bool swap_ = false;
  bool case_z1z2_ = false;
  // case A (monic z1^2): R0 coefficients r[k], L = l1 x2 + l0, M(x2*) data
  Rat l1_;
  Entry l0_;
  std::vector<Entry> r_;  // x2-degree coefficients of the cleared polynomial
  // case z1z2: A2 = y2 + c, Q coefficients
  Rat a2_const_;
  std::vector<Entry> q_;
  unsigned max_pow_ = 1;
};

// Best-effort numeric membership for quadratics in any dimension (and the
// advisory float raster mode): damped Gauss-Newton from a deterministic
// multistart grid; true only when the residual certifiably drops below tol.
bool member_quadric_numeric(const MultiPoly& p, const std::vector<Rat>& y,
                            double tol = 1e-10);

}  // namespace improj

#endif  // IMPROJ_ORACLE_HPP
