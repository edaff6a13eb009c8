// SPDX-License-Identifier: Apache-2.0
//
// Dense univariate polynomials over Q: arithmetic, Sturm chains, distinct
// real-root counting over extended-rational intervals, and root isolation.

#ifndef IMPROJ_UNIPOLY_HPP
#define IMPROJ_UNIPOLY_HPP

#include <utility>
#include <vector>

#include "improj/rational.hpp"

namespace improj {

// Coefficients ascending: c[k] multiplies x^k. Normalized (no trailing zeros).
class RealUniPoly {
 public:
  RealUniPoly() = default;
  explicit RealUniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    trim();
  }
  static RealUniPoly constant(const Rat& v) {
    return RealUniPoly(std::vector<Rat>{v});
  }

  const std::vector<Rat>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& leading() const;
  Rat coeff(size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }

  Rat eval(const Rat& x) const;
  int sign_at(const Rat& x) const { return sign(eval(x)); }
  int sign_at_pos_inf() const;
  int sign_at_neg_inf() const;

  RealUniPoly operator-() const;
  RealUniPoly operator+(const RealUniPoly& o) const;
  RealUniPoly operator-(const RealUniPoly& o) const;
  RealUniPoly operator*(const RealUniPoly& o) const;
  RealUniPoly scaled(const Rat& s) const;
  RealUniPoly derivative() const;
  RealUniPoly monic() const;

  // Euclidean division; both outputs exact over Q.
  static void divmod(const RealUniPoly& a, const RealUniPoly& b,
                     RealUniPoly* quot, RealUniPoly* rem);

  bool operator==(const RealUniPoly& o) const { return c_ == o.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

RealUniPoly gcd(const RealUniPoly& a, const RealUniPoly& b);  // monic result
RealUniPoly squarefree_part(const RealUniPoly& f);

// Extended rational: finite value or +/- infinity.
struct XRat {
  enum Kind { NegInf, Finite, PosInf } kind = Finite;
  Rat value;

  static XRat neg_inf() { return {NegInf, Rat(0)}; }
  static XRat pos_inf() { return {PosInf, Rat(0)}; }
  static XRat finite(Rat v) { return {Finite, std::move(v)}; }
};

struct SturmChain {
  std::vector<RealUniPoly> seq;  // seq[0] is the square-free part

  static SturmChain build(const RealUniPoly& f);
  // Sign variations at x+ (zeros dropped, which matches the right limit).
  int variations(const XRat& x) const;
};

// Number of distinct real roots of f in the half-open interval (a, b].
// (-inf, +inf) counts all distinct real roots.
int sturm_count(const RealUniPoly& f, const XRat& a, const XRat& b);
int sturm_count_all(const RealUniPoly& f);

// Disjoint rational intervals, one distinct real root each.  A rational root
// r may be reported as the degenerate interval [r, r]; otherwise the root is
// interior and f is nonzero at both endpoints.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const RealUniPoly& f);

// Upper bound B with all real roots in (-B, B).
Rat root_bound(const RealUniPoly& f);

// Rational roots found by the rational-root theorem (best effort: divisor
// enumeration by trial division, sufficient for the coefficient sizes that
// occur here). Sorted ascending, no duplicates.
std::vector<Rat> rational_roots(const RealUniPoly& f);

// Existence of a real root decided by degree parity / quadratic discriminant /
// quartic criteria; falls back to Sturm. Exact.
bool has_real_root(const RealUniPoly& f);

}  // namespace improj

#endif  // IMPROJ_UNIPOLY_HPP
