// SPDX-License-Identifier: Apache-2.0
//
// Spectrahedral certificates for complement components, an exact PSD test,
// and the rigid-convexity line probe.  Certificates never decide anything
// through their radical entries: each carries a radical-free sign-guarded
// region that membership checks use instead.

#ifndef IMPROJ_CERTIFY_HPP
#define IMPROJ_CERTIFY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "improj/normalize.hpp"
#include "improj/region.hpp"

namespace improj {

// A nonnegative radical constant: either sqrt(square) with rational square,
// or the nested form sqrt((base + sqrt(norm2)) / 2).
struct RadicalDef {
  bool present = false;
  bool nested = false;
  Rat square;       // simple form
  Rat base, norm2;  // nested form

  RatInterval enclosure(unsigned bits) const;
  std::string json_str() const;
};

// One matrix entry: affine in y plus rational multiples of the radicals
// w and u.
struct LMIEntry {
  Rat const_part;
  Rat w_part, u_part;
  std::vector<Rat> ycoef;  // length = nvars
};

struct LMICertificate {
  std::string name;     // S1..S4, parabola, disk, lines, point, segment, ray
  std::string kind;     // "lmi" | "point" | "segment" | "ray"
  bool strict = false;  // PD (open component) vs PSD (closure)
  int nvars = 2;
  std::vector<std::vector<LMIEntry>> matrix;  // symmetric
  RadicalDef wdef, udef;  // definitions of the radical constants
  Region exact_form;      // radical-free equivalent of the matrix condition

  std::string json() const;
};

// Certificates for the complement components of the given exact normal form.
// Classes 2a.* return an empty list (empty complement); class 2c.2 refuses.
std::vector<LMICertificate> certificates_for(const NormalFormResult& nf);

// Same, pulled back to the original conic's coordinates.
std::vector<LMICertificate> certificates_for_poly(const MultiPoly& p);

struct CertVerification {
  long samples = 0;
  long agreements = 0;
  long disagreements = 0;
  long boundary_hits = 0;       // samples exactly on a closure boundary
  long inconclusive_psd = 0;    // interval PSD check too tight to decide
  bool ok = false;

  std::string json() const;
};

// For seeded random rational points: cert coverage must match the oracle's
// complement verdict, and the interval evaluation of the matrices must agree
// with the radical-free form whenever it is conclusive.
CertVerification verify_certificate(const std::vector<LMICertificate>& certs,
                                    const MultiPoly& p, int samples,
                                    uint64_t seed);

// Exact positive-semidefiniteness of a symmetric rational matrix via the
// characteristic polynomial's Sturm count on the negative axis.
bool psd_check(const RatMatrix& m);

struct RigidConvexityReport {
  int degree = 0;
  int lines_requested = 0;
  int lines_used = 0;
  int lines_skipped = 0;                // h vanished identically on the line
  std::map<int, int> count_histogram;   // #real intersections -> frequency
  double fraction_below_degree = 0.0;
  bool evidence_against = false;        // stable count < degree observed

  std::string json() const;
};

// Counts distinct real intersections of random rational lines through an
// interior point with V(h).  Counts below deg(h) on most lines are evidence
// against rigid convexity (reported as evidence, not proof).
RigidConvexityReport rigid_convexity_line_test(const MultiPoly& h,
                                               const std::vector<Rat>& point,
                                               int lines, uint64_t seed);

// Distinct real intersections of one explicit line point + t*dir with V(h);
// -1 when h vanishes identically on the line.
int line_intersection_count(const MultiPoly& h, const std::vector<Rat>& point,
                            const std::vector<Rat>& dir);

}  // namespace improj

#endif  // IMPROJ_CERTIFY_HPP
