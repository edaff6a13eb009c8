// SPDX-License-Identifier: Apache-2.0

#include "improj/certify.hpp"

#include <nlohmann/json.hpp>

#include "improj/oracle.hpp"
#include "improj/rand.hpp"
#include "improj/realroots.hpp"

namespace improj {

RatInterval RadicalDef::enclosure(unsigned bits) const {
  if (!present) return RatInterval(Rat(0));
  if (!nested) return interval_sqrt(square, bits);
  RatInterval s = interval_sqrt(norm2, bits);
  RatInterval inner((base + s.lo) / 2, (base + s.hi) / 2);
  return interval_sqrt_iv(inner, bits);
}

std::string RadicalDef::json_str() const {
  if (!present) return "0";
  if (!nested) return "sqrt(" + rat_str(square) + ")";
  return "sqrt((" + rat_str(base) + " + sqrt(" + rat_str(norm2) + "))/2)";
}

namespace {

MultiPoly yvar(int n, int i) { return MultiPoly::variable(n, i); }

MultiPoly constant(int n, const Rat& v) {
  return MultiPoly::constant(n, RatC(v));
}

Atom atom(MultiPoly p, Rel r) { return Atom{std::move(p), r}; }

LMIEntry entry_const(const Rat& c, int n) {
  return LMIEntry{c, Rat(0), Rat(0), std::vector<Rat>(n, Rat(0))};
}

LMIEntry entry_w(int n, const Rat& coef = Rat(1)) {
  return LMIEntry{Rat(0), coef, Rat(0), std::vector<Rat>(n, Rat(0))};
}

LMIEntry entry_u(int n) {
  return LMIEntry{Rat(0), Rat(0), Rat(1), std::vector<Rat>(n, Rat(0))};
}

LMIEntry entry_y(int n, int var, const Rat& coef) {
  LMIEntry e{Rat(0), Rat(0), Rat(0), std::vector<Rat>(n, Rat(0))};
  e.ycoef[var] = coef;
  return e;
}

LMIEntry entry_sum(const LMIEntry& a, const LMIEntry& b) {
  LMIEntry e = a;
  e.const_part += b.const_part;
  e.w_part += b.w_part;
  e.u_part += b.u_part;
  for (size_t i = 0; i < e.ycoef.size(); ++i) e.ycoef[i] += b.ycoef[i];
  return e;
}

// w^2 = (gamma_re + |gamma|)/2, as an exact rational when |gamma| is one.
RadicalDef radical_plus(const RatC& g) {
  RadicalDef d;
  d.present = true;
  Rat absval;
  if (rational_sqrt(g.norm2(), &absval)) {
    d.square = (g.re + absval) / 2;
  } else {
    d.nested = true;
    d.base = g.re;
    d.norm2 = g.norm2();
  }
  return d;
}

RadicalDef radical_minus(const RatC& g) {
  RadicalDef d;
  d.present = true;
  Rat absval;
  if (rational_sqrt(g.norm2(), &absval)) {
    d.square = (absval - g.re) / 2;
  } else {
    d.nested = true;
    d.base = -g.re;
    d.norm2 = g.norm2();
  }
  return d;
}

RadicalDef radical_simple(const Rat& square) {
  RadicalDef d;
  d.present = true;
  d.square = square;
  return d;
}

// Guarded comparisons of v against |gamma| (norm2 = |gamma|^2):
//   v >  |gamma|  <=>  v > 0  and v^2 > norm2   (strict)
//   v >= |gamma|  <=>  v >= 0 and v^2 >= norm2
//   v <= -|gamma| <=>  v <= 0 and v^2 >= norm2
Clause cmp_abs_clause(const MultiPoly& v, const Rat& norm2, Rel sign_rel,
                      Rel square_rel) {
  int n = v.nvars();
  return Clause{{atom(v, sign_rel),
                 atom(v * v - constant(n, norm2), square_rel)}};
}

}  // namespace

std::vector<LMICertificate> certificates_for(const NormalFormResult& nf) {
  if (!nf.exact)
    throw Error(ErrorCode::Precondition,
                "certificates need an exact normal form");
  const int n = 2;
  std::vector<LMICertificate> out;
  const RatC& g = *nf.gamma;
  Rat n2 = g.norm2();
  MultiPoly y1 = yvar(n, 0), y2 = yvar(n, 1);

  switch (nf.cls) {
    case ConicClass::C1a1: {
      if (g.im == 0 && g.re <= 0) {
        for (int s = 0; s < 2; ++s) {
          LMICertificate c;
          c.name = s ? "halfplane-left" : "halfplane-right";
          c.kind = "lmi";
          c.strict = true;
          c.matrix = {{entry_y(n, 0, s ? Rat(-1) : Rat(1))}};
          Region r = Region::empty(n);
          r.clauses.push_back({{atom(y1, s ? Rel::LT : Rel::GT)}});
          c.exact_form = std::move(r);
          out.push_back(std::move(c));
        }
        return out;
      }
      // two lines y1 = +-w: two outer open half-planes and the open middle
      RadicalDef w = radical_plus(g);
      MultiPoly v = (y1 * y1).scaled(RatC(2)) - constant(n, g.re);
      for (int s = 0; s < 2; ++s) {
        LMICertificate c;
        c.name = s ? "strip-left" : "strip-right";
        c.kind = "lmi";
        c.strict = true;
        c.wdef = w;
        c.matrix = {{entry_sum(entry_y(n, 0, s ? Rat(-1) : Rat(1)),
                               entry_w(n, Rat(-1)))}};
        Region r = Region::empty(n);
        Clause cl = cmp_abs_clause(v, n2, Rel::GT, Rel::GT);
        cl.atoms.push_back(atom(y1, s ? Rel::LT : Rel::GT));
        r.clauses.push_back(std::move(cl));
        c.exact_form = std::move(r);
        out.push_back(std::move(c));
      }
      {
        LMICertificate c;
        c.name = "strip-middle";
        c.kind = "lmi";
        c.strict = true;
        c.wdef = w;
        c.matrix = {{entry_sum(entry_w(n), entry_y(n, 0, Rat(-1))),
                     entry_const(Rat(0), n)},
                    {entry_const(Rat(0), n),
                     entry_sum(entry_w(n), entry_y(n, 0, Rat(1)))}};
        Region r = Region::empty(n);
        r.clauses.push_back({{atom(v, Rel::LT)}});
        r.clauses.push_back({{atom(v * v - constant(n, n2), Rel::LT)}});
        c.exact_form = std::move(r);
        out.push_back(std::move(c));
      }
      return out;
    }
    case ConicClass::C1a2: {
      if (g.im != 0) {
        LMICertificate c;
        c.name = "parabola-side";
        c.kind = "lmi";
        c.strict = true;
        c.matrix = {{entry_const(Rat(1), n), entry_y(n, 0, Rat(1))},
                    {entry_y(n, 0, Rat(1)), entry_y(n, 1, -g.im)}};
        Region r = Region::empty(n);
        r.clauses.push_back(
            {{atom(y1 * y1 + y2.scaled(RatC(g.im)), Rel::LT)}});
        c.exact_form = std::move(r);
        out.push_back(std::move(c));
        return out;
      }
      // real gamma: two rays of the punctured axis (closed matrices)
      for (int s = 0; s < 2; ++s) {
        LMICertificate c;
        c.name = s ? "ray-down" : "ray-up";
        c.kind = "ray";
        c.strict = false;
        c.matrix = {{entry_y(n, 1, s ? Rat(-1) : Rat(1)),
                     entry_const(Rat(0), n), entry_const(Rat(0), n)},
                    {entry_const(Rat(0), n), entry_y(n, 0, Rat(1)),
                     entry_const(Rat(0), n)},
                    {entry_const(Rat(0), n), entry_const(Rat(0), n),
                     entry_y(n, 0, Rat(-1))}};
        Region r = Region::empty(n);
        r.clauses.push_back(
            {{atom(y1, Rel::EQ), atom(y2, s ? Rel::LE : Rel::GE)}});
        c.exact_form = std::move(r);
        out.push_back(std::move(c));
      }
      return out;
    }
    case ConicClass::C1b: {
      RadicalDef w = radical_plus(g), u = radical_minus(g);
      MultiPoly v = (y1 * y2).scaled(RatC(2)) - constant(n, g.re);
      auto make = [&](const std::string& name, int sy1, int sy2, bool wside) {
        LMICertificate c;
        c.name = name;
        c.kind = "lmi";
        c.strict = false;  // closures, one per quadrant component
        c.wdef = wside ? w : RadicalDef{};
        c.udef = wside ? RadicalDef{} : u;
        LMIEntry offdiag = wside ? entry_w(n) : entry_u(n);
        c.matrix = {{entry_y(n, 0, Rat(sy1)), offdiag},
                    {offdiag, entry_y(n, 1, Rat(sy2))}};
        Region r = Region::empty(n);
        Clause cl = wside ? cmp_abs_clause(v, n2, Rel::GE, Rel::GE)
                          : cmp_abs_clause(v, n2, Rel::LE, Rel::GE);
        cl.atoms.push_back(atom(y1.scaled(RatC(Rat(sy1))), Rel::GE));
        cl.atoms.push_back(atom(y2.scaled(RatC(Rat(sy2))), Rel::GE));
        r.clauses.push_back(std::move(cl));
        c.exact_form = std::move(r);
        return c;
      };
      out.push_back(make("S1", 1, 1, true));
      out.push_back(make("S2", -1, -1, true));
      out.push_back(make("S3", 1, -1, false));
      out.push_back(make("S4", -1, 1, false));
      return out;
    }
    case ConicClass::C2a1:
    case ConicClass::C2a2:
      return out;  // empty complement
    case ConicClass::C2b: {
      const RatC& alpha = *nf.alpha;
      if (g.is_zero() || alpha.im * g.im > 0) return out;
      if (g.im == 0) {
        LMICertificate c;
        c.name = "origin";
        c.kind = "point";
        c.strict = false;
        c.matrix = {{entry_y(n, 0, Rat(1)), entry_const(Rat(0), n),
                     entry_const(Rat(0), n), entry_const(Rat(0), n)},
                    {entry_const(Rat(0), n), entry_y(n, 0, Rat(-1)),
                     entry_const(Rat(0), n), entry_const(Rat(0), n)},
                    {entry_const(Rat(0), n), entry_const(Rat(0), n),
                     entry_y(n, 1, Rat(1)), entry_const(Rat(0), n)},
                    {entry_const(Rat(0), n), entry_const(Rat(0), n),
                     entry_const(Rat(0), n), entry_y(n, 1, Rat(-1))}};
        Region r = Region::empty(n);
        r.clauses.push_back({{atom(y1, Rel::EQ), atom(y2, Rel::EQ)}});
        c.exact_form = std::move(r);
        out.push_back(std::move(c));
        return out;
      }
      Rat cseg = -4 * alpha.im * g.im;  // > 0
      LMICertificate c;
      c.name = "segment";
      c.kind = "segment";
      c.strict = false;
      c.wdef = radical_simple(cseg);
      c.matrix = {{entry_sum(entry_w(n), entry_y(n, 0, Rat(-1))),
                   entry_const(Rat(0), n), entry_const(Rat(0), n),
                   entry_const(Rat(0), n)},
                  {entry_const(Rat(0), n),
                   entry_sum(entry_w(n), entry_y(n, 0, Rat(1))),
                   entry_const(Rat(0), n), entry_const(Rat(0), n)},
                  {entry_const(Rat(0), n), entry_const(Rat(0), n),
                   entry_y(n, 1, Rat(1)), entry_const(Rat(0), n)},
                  {entry_const(Rat(0), n), entry_const(Rat(0), n),
                   entry_const(Rat(0), n), entry_y(n, 1, Rat(-1))}};
      Region r = Region::empty(n);
      r.clauses.push_back(
          {{atom(y2, Rel::EQ), atom(y1 * y1 - constant(n, cseg), Rel::LE)}});
      c.exact_form = std::move(r);
      out.push_back(std::move(c));
      return out;
    }
    case ConicClass::C2c1: {
      if (g.im == 0 && g.re <= 0) return out;
      LMICertificate c;
      c.name = "disk";
      c.kind = "lmi";
      c.strict = true;
      c.wdef = radical_plus(g);
      c.matrix = {{entry_sum(entry_w(n), entry_y(n, 0, Rat(1))),
                   entry_y(n, 1, Rat(1))},
                  {entry_y(n, 1, Rat(1)),
                   entry_sum(entry_w(n), entry_y(n, 0, Rat(-1)))}};
      MultiPoly s2 = y1 * y1 + y2 * y2;
      MultiPoly v = s2.scaled(RatC(2)) - constant(n, g.re);
      Region r = Region::empty(n);
      r.clauses.push_back({{atom(v, Rel::LT)}});
      r.clauses.push_back({{atom(v * v - constant(n, n2), Rel::LT)}});
      c.exact_form = std::move(r);
      out.push_back(std::move(c));
      return out;
    }
    case ConicClass::C2c2:
      throw Error(ErrorCode::Precondition,
                  "class 2c.2 components are generally not spectrahedral; "
                  "use the rigid-convexity line test");
  }
  return out;
}

namespace {

LMICertificate pulled_back_cert(const LMICertificate& c,
                                const AffineTransform& tinv) {
  LMICertificate out = c;
  const RatMatrix& A = tinv.A;
  std::vector<Rat> shift = tinv.imag_shift();
  int n = c.nvars;
  for (auto& row : out.matrix) {
    for (auto& e : row) {
      std::vector<Rat> ny(n, Rat(0));
      Rat nc = e.const_part;
      for (int k = 0; k < n; ++k) {
        if (e.ycoef[k] == 0) continue;
        nc += e.ycoef[k] * shift[k];
        for (int j = 0; j < n; ++j) ny[j] += e.ycoef[k] * A[k][j];
      }
      e.const_part = nc;
      e.ycoef = std::move(ny);
    }
  }
  out.exact_form = c.exact_form.pulled_back(tinv);
  return out;
}

}  // namespace

std::vector<LMICertificate> certificates_for_poly(const MultiPoly& p) {
  NormalFormResult nf = normalize_conic(p);
  if (!nf.exact)
    throw Error(ErrorCode::Precondition,
                "certificates need an exact normalization");
  std::vector<LMICertificate> certs = certificates_for(nf);
  AffineTransform tinv = nf.transform->inverse();
  std::vector<LMICertificate> out;
  out.reserve(certs.size());
  for (const auto& c : certs) out.push_back(pulled_back_cert(c, tinv));
  return out;
}

// ---------------------------------------------------------------------------
// verification

namespace {

// 1 = satisfied, 0 = violated, -1 = inconclusive (interval too tight).
int interval_matrix_verdict(const LMICertificate& c, const std::vector<Rat>& y,
                            unsigned bits) {
  RatInterval w = c.wdef.enclosure(bits);
  RatInterval u = c.udef.enclosure(bits);
  size_t d = c.matrix.size();
  std::vector<std::vector<RatInterval>> m(
      d, std::vector<RatInterval>(d, RatInterval(Rat(0))));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      const LMIEntry& e = c.matrix[i][j];
      RatInterval acc(e.const_part);
      if (e.w_part != 0) acc = acc + w * RatInterval(e.w_part);
      if (e.u_part != 0) acc = acc + u * RatInterval(e.u_part);
      Rat lin = 0;
      for (size_t k = 0; k < e.ycoef.size(); ++k) lin += e.ycoef[k] * y[k];
      m[i][j] = acc + RatInterval(lin);
    }
  bool inconclusive = false;
  auto check_nonneg = [&](const RatInterval& v) -> int {
    if (c.strict) {
      if (v.lo > 0) return 1;
      if (v.hi <= 0) return 0;
      return -1;
    }
    if (v.lo >= 0) return 1;
    if (v.hi < 0) return 0;
    return -1;
  };
  bool diagonal = true;
  for (size_t i = 0; i < d && diagonal; ++i)
    for (size_t j = 0; j < d; ++j)
      if (i != j && !(m[i][j].lo == 0 && m[i][j].hi == 0)) diagonal = false;
  if (diagonal) {
    int verdict = 1;
    for (size_t i = 0; i < d; ++i) {
      int r = check_nonneg(m[i][i]);
      if (r == 0) return 0;
      if (r < 0) inconclusive = true;
    }
    return inconclusive ? -1 : verdict;
  }
  if (d != 2)
    throw Error(ErrorCode::Internal, "interval PSD beyond 2x2 non-diagonal");
  RatInterval det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  int t1 = check_nonneg(m[0][0]);
  int t2 = check_nonneg(m[1][1]);
  int t3 = check_nonneg(det);
  if (t1 == 0 || t2 == 0 || t3 == 0) return 0;
  if (t1 < 0 || t2 < 0 || t3 < 0) return -1;
  return 1;
}

}  // namespace

CertVerification verify_certificate(const std::vector<LMICertificate>& certs,
                                    const MultiPoly& p, int samples,
                                    uint64_t seed) {
  CertVerification rep;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    std::vector<Rat> y = {random_rat(rng, 320, 64), random_rat(rng, 320, 64)};
    bool member = member_conic_exact(p, y);
    bool covered = false;
    bool any_boundary = false;
    bool consistent = true;
    for (const auto& c : certs) {
      bool in_form = c.exact_form.member(y);
      if (in_form) covered = true;
      int iv = interval_matrix_verdict(c, y, 160);
      if (iv == -1) {
        ++rep.inconclusive_psd;
      } else if ((iv == 1) != in_form) {
        consistent = false;
      }
      if (in_form && !c.strict) {
        Region strictened = c.exact_form;
        for (auto& clause : strictened.clauses)
          for (auto& a : clause.atoms) {
            if (a.rel == Rel::LE) a.rel = Rel::LT;
            if (a.rel == Rel::GE) a.rel = Rel::GT;
          }
        if (!strictened.member(y)) any_boundary = true;
      }
    }
    bool agree;
    if (!member) {
      agree = covered;  // every complement point lies in some component
    } else {
      agree = !covered || any_boundary;  // closures meet I(p) in boundaries
    }
    if (any_boundary) ++rep.boundary_hits;
    if (agree && consistent)
      ++rep.agreements;
    else
      ++rep.disagreements;
  }
  rep.samples = samples;
  rep.ok = rep.disagreements == 0;
  return rep;
}

bool psd_check(const RatMatrix& m) {
  size_t n = m.size();
  for (size_t i = 0; i < n; ++i) {
    if (m[i].size() != n)
      throw Error(ErrorCode::Precondition, "psd_check needs a square matrix");
    for (size_t j = 0; j < n; ++j)
      if (m[i][j] != m[j][i])
        throw Error(ErrorCode::Precondition, "psd_check needs symmetry");
  }
  if (n == 0) return true;
  // characteristic polynomial by Faddeev-LeVerrier, exact over Q
  std::vector<Rat> coeffs(n + 1, Rat(0));
  coeffs[n] = 1;
  RatMatrix acc = m;
  for (size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      RatMatrix tmp = acc;
      for (size_t i = 0; i < n; ++i) tmp[i][i] += coeffs[n - (k - 1)];
      acc = matrix_mul(m, tmp);
    }
    Rat tr = 0;
    for (size_t i = 0; i < n; ++i) tr += acc[i][i];
    coeffs[n - k] = -tr / Rat(static_cast<long>(k));
  }
  RealUniPoly chi{std::move(coeffs)};
  int upto = sturm_count(chi, XRat::neg_inf(), XRat::finite(Rat(0)));
  int at_zero = chi.eval(Rat(0)) == 0 ? 1 : 0;
  return (upto - at_zero) == 0;
}

// ---------------------------------------------------------------------------
// rigid convexity

int line_intersection_count(const MultiPoly& h, const std::vector<Rat>& point,
                            const std::vector<Rat>& dir) {
  if (h.nvars() != 2)
    throw Error(ErrorCode::Precondition, "line test needs a bivariate h");
  MultiPoly t = MultiPoly::variable(1, 0);
  std::vector<MultiPoly> repl;
  for (int j = 0; j < 2; ++j)
    repl.push_back(MultiPoly::constant(1, RatC(point[j])) +
                   t.scaled(RatC(dir[j])));
  MultiPoly f = h.subst(repl);
  if (f.is_zero()) return -1;
  RealUniPoly fu = to_unipoly(f, 0);
  if (fu.degree() < 1) return 0;
  return sturm_count_all(fu);
}

RigidConvexityReport rigid_convexity_line_test(const MultiPoly& h,
                                               const std::vector<Rat>& point,
                                               int lines, uint64_t seed) {
  if (h.is_zero())
    throw Error(ErrorCode::Precondition, "rigid test needs a nonzero h");
  RigidConvexityReport rep;
  rep.degree = h.degree().value_or(0);
  rep.lines_requested = lines;
  std::mt19937_64 rng(seed);
  int below = 0;
  for (int k = 0; k < lines; ++k) {
    std::vector<Rat> dir = {random_rat(rng, 64, 16), random_rat(rng, 64, 16)};
    if (dir[0] == 0 && dir[1] == 0) dir[0] = 1;
    int c = line_intersection_count(h, point, dir);
    if (c < 0) {
      ++rep.lines_skipped;
      continue;
    }
    ++rep.lines_used;
    rep.count_histogram[c] += 1;
    if (c < rep.degree) ++below;
  }
  rep.fraction_below_degree =
      rep.lines_used ? static_cast<double>(below) / rep.lines_used : 0.0;
  rep.evidence_against = rep.lines_used > 0 && rep.fraction_below_degree > 0.9;
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

std::string LMICertificate::json() const {
  nlohmann::json out;
  out["name"] = name;
  out["kind"] = kind;
  out["strict"] = strict;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : matrix) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& e : row) {
      nlohmann::json je;
      je["const"] = rat_str(e.const_part);
      if (e.w_part != 0) je["w"] = rat_str(e.w_part);
      if (e.u_part != 0) je["u"] = rat_str(e.u_part);
      nlohmann::json yc = nlohmann::json::array();
      for (const auto& v : e.ycoef) yc.push_back(rat_str(v));
      je["y"] = std::move(yc);
      r.push_back(std::move(je));
    }
    rows.push_back(std::move(r));
  }
  out["matrix"] = std::move(rows);
  if (wdef.present) out["w"] = wdef.json_str();
  if (udef.present) out["u"] = udef.json_str();
  out["exact_form"] = nlohmann::json::parse(exact_form.json());
  return out.dump();
}

std::string CertVerification::json() const {
  nlohmann::json out;
  out["samples"] = samples;
  out["agreements"] = agreements;
  out["disagreements"] = disagreements;
  out["boundary_hits"] = boundary_hits;
  out["inconclusive_psd"] = inconclusive_psd;
  out["ok"] = ok;
  return out.dump();
}

std::string RigidConvexityReport::json() const {
  nlohmann::json out;
  out["degree"] = degree;
  out["lines_requested"] = lines_requested;
  out["lines_used"] = lines_used;
  out["lines_skipped"] = lines_skipped;
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [count, freq] : count_histogram)
    hist[std::to_string(count)] = freq;
  out["count_histogram"] = std::move(hist);
  out["fraction_below_degree"] = fraction_below_degree;
  out["evidence_against_rigid_convexity"] = evidence_against;
  return out.dump();
}

}  // namespace improj
