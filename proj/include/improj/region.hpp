// SPDX-License-Identifier: Apache-2.0
//
// Semialgebraic descriptions of imaginary projections: unions of sign-
// condition conjunctions over the y-variables, with finitely many added or
// removed rational points. Membership evaluation is exact.

#ifndef IMPROJ_REGION_HPP
#define IMPROJ_REGION_HPP

#include <string>
#include <vector>

#include "improj/poly.hpp"
#include "improj/transform.hpp"

namespace improj {

enum class Rel { LT, LE, EQ, NE, GT, GE };

std::string rel_str(Rel r);
bool rel_holds(Rel r, int sign_of_value);

struct Atom {
  MultiPoly poly;  // real coefficients, in y-variables
  Rel rel;
};

struct Clause {
  std::vector<Atom> atoms;  // conjunction; empty means "everything"
};

struct Region {
  int nvars = 2;
  bool full_space = false;
  std::vector<Clause> clauses;  // disjunction
  std::vector<std::vector<Rat>> added_points;
  std::vector<std::vector<Rat>> removed_points;

  static Region full(int nvars);
  static Region empty(int nvars);

  // removed wins over clauses; added wins over clause failure.
  bool member(const std::vector<Rat>& y) const;
  // Closure approximation: strict atoms relaxed, != dropped, removed points
  // ignored. Exact for the closed-form classes shipped here.
  bool member_closed(const std::vector<Rat>& y) const;

  // {y : A y + Im(b) in this}; requires an exact transform.
  Region pulled_back(const AffineTransform& t) const;

  std::string str() const;   // human-readable inequality text
  std::string json() const;
};

// Either a closed-form region or an explicit delegation to the exact oracle
// (class 2c.2, and inexact normalizations).
struct RegionResult {
  bool delegated = false;
  std::string reason;        // when delegated
  Region region;             // valid when !delegated

  std::string json() const;
};

}  // namespace improj

#endif  // IMPROJ_REGION_HPP
