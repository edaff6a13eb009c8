// SPDX-License-Identifier: Apache-2.0
//
// Sparse multivariate polynomials with exact rational-complex coefficients.
// Terms are kept in graded-lexicographic order (highest first) so printing
// and JSON output are deterministic.

#ifndef IMPROJ_POLY_HPP
#define IMPROJ_POLY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "improj/rational.hpp"

namespace improj {

using ExpVec = std::vector<uint32_t>;

inline uint32_t exp_total(const ExpVec& e) {
  uint32_t t = 0;
  for (uint32_t x : e) t += x;
  return t;
}

struct GrlexGreater {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    uint32_t da = exp_total(a), db = exp_total(b);
    if (da != db) return da > db;
    return a > b;  // lexicographic, z1 dominating
  }
};

class MultiPoly {
 public:
  using TermMap = std::map<ExpVec, RatC, GrlexGreater>;

  MultiPoly() : nvars_(1) {}
  explicit MultiPoly(int nvars) : nvars_(nvars) {
    if (nvars < 1) throw Error(ErrorCode::Precondition, "nvars must be >= 1");
  }

  static MultiPoly constant(int nvars, const RatC& c);
  static MultiPoly variable(int nvars, int index);  // 0-based
  static MultiPoly monomial(int nvars, ExpVec exp, const RatC& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  // Total degree; nullopt is the zero polynomial's sentinel.
  std::optional<int> degree() const;
  int degree_in(int var) const;  // -1 for the zero polynomial

  bool is_real() const;              // every coefficient has zero imaginary part
  bool is_constant() const { return !degree() || *degree() == 0; }
  RatC constant_term() const;

  void add_term(const ExpVec& exp, const RatC& c);
  RatC coeff(const ExpVec& exp) const;

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly scaled(const RatC& c) const;
  MultiPoly pow(unsigned k) const;
  MultiPoly conj() const;  // conjugate coefficients
  MultiPoly derivative(int var) const;

  bool operator==(const MultiPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  RatC eval(const std::vector<RatC>& point) const;
  Rat eval_real(const std::vector<Rat>& point) const;  // requires is_real()

  // Simultaneous substitution of every variable; values[j] replaces variable j
  // and must all share one variable count.
  MultiPoly subst(const std::vector<MultiPoly>& values) const;
  MultiPoly subst_var(int var, const MultiPoly& value) const;

  // Univariate views with respect to one variable.
  std::vector<MultiPoly> coeffs_in(int var) const;  // index = power
  static MultiPoly from_coeffs_in(int var, int nvars,
                                  const std::vector<MultiPoly>& coeffs);

  // Sum of the terms of maximal total degree.
  MultiPoly initial_form() const;

  // Renames nothing, changes arity: embeds into a polynomial ring with
  // `nvars` variables (nvars >= current), identically on variables.
  MultiPoly widened(int nvars) const;

  // Swap two variables.
  MultiPoly swapped(int va, int vb) const;

  std::string str(const std::string& var_prefix = "z") const;
  std::string str_named(const std::vector<std::string>& names) const;
  std::string json() const;
  static MultiPoly from_json(const std::string& text);

 private:
  int nvars_;
  TermMap terms_;
};

// Parses the CLI grammar: variables z1..zN (x/y prefixes accepted as
// synonyms), imaginary unit i, rational literals p/q, suffixed imaginary
// literals like 3/2i, operators + - * ^ and parentheses.  Reports the byte
// offset of the first offending token on error.
MultiPoly parse_poly(const std::string& text, int nvars);

// p(x + iy) split into exact real and imaginary parts over 2n real variables
// ordered (x_1..x_n, y_1..y_n).
struct RealSplit {
  MultiPoly p_re, p_im;
};
RealSplit split_real_imag(const MultiPoly& p);

// Homogeneous bivariate form sum c_j z1^(d-j) z2^j.
struct BinaryForm {
  int degree = 0;
  std::vector<RatC> coeffs;  // size degree+1, c0..cd

  static BinaryForm from_poly(const MultiPoly& homogeneous);
  MultiPoly to_poly() const;
  bool is_zero() const;
};

// init(p): the binary form of the top-degree part (nvars must be 2).
BinaryForm initial_binary_form(const MultiPoly& p);

}  // namespace improj

#endif  // IMPROJ_POLY_HPP
