// SPDX-License-Identifier: Apache-2.0

#include "improj/oracle.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

#include "improj/realroots.hpp"

namespace improj {

namespace {

// sign of A + B*sqrt(d) for rational A, B and d > 0 (d need not be square).
int sign_a_plus_b_sqrt(const Rat& A, const Rat& B, const Rat& d) {
  int sa = sign(A), sb = sign(B);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare A^2 against B^2 d
  Rat lhs = A * A, rhs = B * B * d;
  if (lhs == rhs) return 0;
  bool a_dominates = lhs > rhs;
  return a_dominates ? sa : sb;
}

// exists x2 with g(x2) >= 0, for deg(g) <= 2.
bool attains_nonnegative(const RealUniPoly& g) {
  if (g.is_zero()) return true;
  int d = g.degree();
  if (d == 0) return g.coeffs()[0] >= 0;
  if (d == 1) return true;
  if (g.coeffs()[2] > 0) return true;
  // negative leading: maximum at vertex; nonnegative iff disc >= 0
  Rat disc = g.coeffs()[1] * g.coeffs()[1] - 4 * g.coeffs()[2] * g.coeffs()[0];
  return disc >= 0;
}

struct SplitXY {
  // real polynomials in (x1, x2) for a fixed rational y
  MultiPoly re, im;  // nvars = 2
};

SplitXY split_at_y(const MultiPoly& p, const std::vector<Rat>& y) {
  // z_j -> x_j + i y_j with numeric y
  std::vector<MultiPoly> repl;
  for (int j = 0; j < 2; ++j) {
    MultiPoly xj = MultiPoly::variable(2, j);
    repl.push_back(xj + MultiPoly::constant(2, RatC(Rat(0), y[j])));
  }
  MultiPoly full = p.subst(repl);
  SplitXY out{MultiPoly(2), MultiPoly(2)};
  for (const auto& [e, c] : full.terms()) {
    if (c.re != 0) out.re.add_term(e, RatC(c.re));
    if (c.im != 0) out.im.add_term(e, RatC(c.im));
  }
  return out;
}

RealUniPoly unipoly_in_x2(const MultiPoly& q) { return to_unipoly(q, 1); }

// Strip every (x - root) factor from f; root must be rational.
RealUniPoly deflate_all(const RealUniPoly& f, const Rat& root) {
  RealUniPoly cur = f;
  RealUniPoly lin(std::vector<Rat>{-root, Rat(1)});
  while (!cur.is_zero() && cur.eval(root) == 0) {
    RealUniPoly q, r;
    RealUniPoly::divmod(cur, lin, &q, &r);
    if (!r.is_zero()) break;
    cur = q;
  }
  return cur;
}

struct CaseAParts {
  RealUniPoly L, M, P1, P0, R0;
};

// p must be monic in z1^2 already; builds the elimination data at numeric y.
CaseAParts case_a_parts(const MultiPoly& p, const std::vector<Rat>& y) {
  SplitXY s = split_at_y(p, y);
  auto im_rows = s.im.coeffs_in(0);  // in x1
  if (static_cast<int>(im_rows.size()) > 2)
    throw Error(ErrorCode::Internal, "imaginary part not linear in x1");
  CaseAParts parts;
  parts.M = unipoly_in_x2(im_rows[0]);
  parts.L = im_rows.size() > 1 ? unipoly_in_x2(im_rows[1]) : RealUniPoly();
  auto re_rows = s.re.coeffs_in(0);
  if (static_cast<int>(re_rows.size()) != 3 ||
      !(re_rows[2] == MultiPoly::constant(2, RatC(1))))
    throw Error(ErrorCode::Internal, "real part not monic quadratic in x1");
  parts.P0 = unipoly_in_x2(re_rows[0]);
  parts.P1 = unipoly_in_x2(re_rows[1]);
  parts.R0 = parts.M * parts.M - parts.P1 * parts.M * parts.L +
             parts.P0 * parts.L * parts.L;
  return parts;
}

bool member_case_a(const MultiPoly& p, const std::vector<Rat>& y,
                   MembershipTrace* trace) {
  CaseAParts parts = case_a_parts(p, y);
  const RealUniPoly &L = parts.L, &M = parts.M;
  if (trace) {
    trace->L = L;
    trace->M = M;
    trace->R = parts.R0;
    if (parts.R0.degree() == 4) {
      const auto& rc = parts.R0.coeffs();
      trace->criteria = quartic_has_real_root(rc[0], rc[1], rc[2], rc[3], rc[4]);
    }
  }
  if (!L.is_zero()) {
    if (parts.R0.is_zero()) {
      // p_re vanishes identically on the solved line; any x2 off V(L) works.
      if (trace) trace->branch = "generic-degenerate";
      return true;
    }
    bool generic;
    int count = 0;
    std::optional<Rat> xstar;
    if (L.degree() == 0) {
      count = sturm_count_all(parts.R0);
      generic = count > 0;
      if (trace) trace->branch = "L-constant";
    } else {
      Rat x2s = -L.coeffs()[0] / L.coeffs()[1];
      xstar = x2s;
      RealUniPoly r1 = deflate_all(parts.R0, x2s);
      count = r1.degree() >= 1 ? sturm_count_all(r1) : 0;
      generic = count > 0;
      if (trace) trace->branch = "generic-quartic";
    }
    bool l_zero_branch = false;
    if (xstar && M.eval(*xstar) == 0) {
      // the x2 = x2* line: p_re is a monic real quadratic in x1
      Rat p1v = parts.P1.eval(*xstar), p0v = parts.P0.eval(*xstar);
      l_zero_branch = (p1v * p1v - 4 * p0v) >= 0;
    }
    if (trace) {
      trace->root_count = count;
      if (generic && count > 0) {
        RealUniPoly probe = xstar ? deflate_all(parts.R0, *xstar) : parts.R0;
        auto roots = isolate_real_roots(probe);
        if (!roots.empty()) trace->witness_x2 = roots.front();
      }
    }
    return generic || l_zero_branch;
  }
  // L == 0: the imaginary part is M(x2) alone.
  if (trace) trace->branch = "L-zero";
  RealUniPoly g = parts.P1 * parts.P1 - parts.P0.scaled(Rat(4));
  if (M.is_zero()) return attains_nonnegative(g);
  int dm = M.degree();
  if (dm == 0) return false;  // nonzero constant, no solution
  if (dm == 1) {
    Rat tau = -M.coeffs()[0] / M.coeffs()[1];
    return g.eval(tau) >= 0;
  }
  // deg 2: roots live in Q(sqrt(disc))
  Rat m0 = M.coeffs()[0], m1 = M.coeffs()[1], m2 = M.coeffs()[2];
  Rat disc = m1 * m1 - 4 * m0 * m2;
  if (disc < 0) return false;
  Rat sq;
  if (rational_sqrt(disc, &sq)) {
    Rat t1 = (-m1 + sq) / (2 * m2), t2 = (-m1 - sq) / (2 * m2);
    return g.eval(t1) >= 0 || g.eval(t2) >= 0;
  }
  // reduce g modulo M: g = q*M + r1 x + r0; sign of g(tau) from the residue
  RealUniPoly r;
  RealUniPoly::divmod(g, RealUniPoly(std::vector<Rat>{m0, m1, m2}), nullptr,
                      &r);
  Rat r0 = r.coeff(0), r1 = r.coeff(1);
  // tau = (-m1 +- sqrt(disc)) / (2 m2)
  Rat A = r0 - r1 * m1 / (2 * m2);
  Rat B = r1 / (2 * m2);
  return sign_a_plus_b_sqrt(A, B, disc) >= 0 ||
         sign_a_plus_b_sqrt(A, -B, disc) >= 0;
}

bool member_case_z1z2(const MultiPoly& p, const std::vector<Rat>& y,
                      MembershipTrace* trace) {
  // p is b-scaled: z1 z2 + d z1 + e z2 + f. Both parts are linear in x1.
  SplitXY s = split_at_y(p, y);
  auto re_rows = s.re.coeffs_in(0);
  auto im_rows = s.im.coeffs_in(0);
  if (re_rows.size() > 2 || im_rows.size() > 2)
    throw Error(ErrorCode::Internal, "z1z2 case: parts not linear in x1");
  RealUniPoly B1 = unipoly_in_x2(re_rows[0]);
  RealUniPoly A1 = re_rows.size() > 1 ? unipoly_in_x2(re_rows[1]) : RealUniPoly();
  RealUniPoly B2 = unipoly_in_x2(im_rows[0]);
  RealUniPoly A2 = im_rows.size() > 1 ? unipoly_in_x2(im_rows[1]) : RealUniPoly();
  if (!A2.is_zero() && A2.degree() > 0)
    throw Error(ErrorCode::Internal, "z1z2 case: x1-coefficient not constant");
  if (trace) trace->branch = "z1z2-linear";
  if (!A2.is_zero()) {
    Rat a2 = A2.coeffs()[0];
    RealUniPoly Q = B1.scaled(a2) - A1 * B2;
    if (trace) trace->R = Q;
    if (Q.is_zero()) return true;
    return has_real_root(Q);
  }
  // p_im = B2(x2) alone
  if (B2.is_zero()) return true;  // A1 has degree 1, always solvable
  if (B2.degree() == 0) return false;
  Rat tau = -B2.coeffs()[0] / B2.coeffs()[1];
  if (A1.eval(tau) != 0) return true;
  return B1.eval(tau) == 0;
}

}  // namespace

bool member_conic_exact(const MultiPoly& p, const std::vector<Rat>& y,
                        MembershipTrace* trace) {
  if (p.nvars() != 2)
    throw Error(ErrorCode::Precondition, "member_conic_exact needs nvars=2");
  auto deg = p.degree();
  if (!deg || *deg != 2)
    throw Error(ErrorCode::Precondition, "member_conic_exact needs degree 2");
  if (y.size() != 2)
    throw Error(ErrorCode::Precondition, "point dimension mismatch");

  RatC a = p.coeff({2, 0}), b = p.coeff({1, 1}), c = p.coeff({0, 2});
  if (!a.is_zero()) {
    return member_case_a(p.scaled(a.inv()), y, trace);
  }
  if (!c.is_zero()) {
    if (trace) trace->swapped = true;
    MultiPoly q = p.swapped(0, 1).scaled(c.inv());
    return member_case_a(q, {y[1], y[0]}, trace);
  }
  return member_case_z1z2(p.scaled(b.inv()), y, trace);
}

std::string MembershipTrace::json() const {
  nlohmann::json out;
  out["branch"] = branch;
  out["swapped"] = swapped;
  auto uni = [](const RealUniPoly& f) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& cv : f.coeffs()) a.push_back(rat_str(cv));
    return a;
  };
  out["L"] = uni(L);
  out["M"] = uni(M);
  out["R"] = uni(R);
  out["root_count"] = root_count;
  if (witness_x2)
    out["witness_x2"] = {rat_str(witness_x2->first),
                         rat_str(witness_x2->second)};
  if (criteria) {
    out["criteria"] = {{"disc", rat_str(criteria->disc)},
                       {"P", rat_str(criteria->P)},
                       {"R", rat_str(criteria->R)},
                       {"D", rat_str(criteria->D)},
                       {"has_root", criteria->has_root}};
  }
  return out.dump();
}

// ---------------------------------------------------------------------------
// FastConicMembership

FastConicMembership::Entry FastConicMembership::compile(
    const MultiPoly& q) const {
  Entry e;
  for (const auto& [exp, c] : q.terms()) {
    if (c.im != 0) throw Error(ErrorCode::Internal, "fast compile: non-real");
    e.terms.push_back({exp, c.re});
  }
  return e;
}

Rat FastConicMembership::Entry::eval(const std::vector<Rat>& pow1,
                                     const std::vector<Rat>& pow2) const {
  Rat acc = 0;
  for (const auto& [e, c] : terms) acc += c * pow1[e[0]] * pow2[e[1]];
  return acc;
}

FastConicMembership::FastConicMembership(const MultiPoly& p) : original_(p) {
  if (p.nvars() != 2 || !p.degree() || *p.degree() != 2)
    throw Error(ErrorCode::Precondition, "fast membership needs a conic");
  RatC a = p.coeff({2, 0}), b = p.coeff({1, 1}), c = p.coeff({0, 2});
  MultiPoly work(2);
  if (!a.is_zero()) {
    work = p.scaled(a.inv());
  } else if (!c.is_zero()) {
    swap_ = true;
    work = p.swapped(0, 1).scaled(c.inv());
  } else {
    case_z1z2_ = true;
    work = p.scaled(b.inv());
  }

  // Symbolic split over (x1, x2, y1, y2).
  RealSplit s = split_real_imag(work);
  // Reindex to polynomials in (x2, y1, y2) for the x1-coefficient rows.
  auto rows_of = [&](const MultiPoly& q) {
    // vars: 0=x1 1=x2 2=y1 3=y2; collect coefficients in x1 as polynomials in
    // (x2, y1, y2) widened to 3 vars (x2, y1, y2)
    std::vector<MultiPoly> rows = q.coeffs_in(0);
    std::vector<MultiPoly> out;
    for (auto& r : rows) {
      MultiPoly m(3);
      for (const auto& [e, cc] : r.terms())
        m.add_term({e[1], e[2], e[3]}, cc);
      out.push_back(std::move(m));
    }
    return out;
  };

  if (!case_z1z2_) {
    auto im_rows = rows_of(s.p_im);
    MultiPoly M3 = im_rows[0];
    MultiPoly L3 = im_rows.size() > 1 ? im_rows[1] : MultiPoly(3);
    auto re_rows = rows_of(s.p_re);
    MultiPoly P0 = re_rows[0];
    MultiPoly P1 = re_rows.size() > 1 ? re_rows[1] : MultiPoly(3);
    MultiPoly R0 = M3 * M3 - P1 * M3 * L3 + P0 * L3 * L3;
    // L = l1 * x2 + l0(y): l1 is constant by construction.
    auto l_rows = L3.coeffs_in(0);
    MultiPoly l1p = l_rows.size() > 1 ? l_rows[1] : MultiPoly(3);
    if (l1p.degree() && *l1p.degree() > 0)
      throw Error(ErrorCode::Internal, "fast compile: l1 not constant");
    l1_ = l1p.is_zero() ? Rat(0) : l1p.constant_term().re;
    {
      MultiPoly l0p = l_rows[0];
      MultiPoly l0y(2);
      for (const auto& [e, cc] : l0p.terms()) l0y.add_term({e[1], e[2]}, cc);
      l0_ = compile(l0y);
    }
    for (const auto& rr : R0.coeffs_in(0)) {
      MultiPoly ry(2);
      for (const auto& [e, cc] : rr.terms()) ry.add_term({e[1], e[2]}, cc);
      r_.push_back(compile(ry));
      max_pow_ = std::max<unsigned>(max_pow_, ry.degree_in(0) + 1);
      max_pow_ = std::max<unsigned>(max_pow_, ry.degree_in(1) + 1);
    }
  } else {
    // A2 = y2 + d_im (constant in x2); Q = B1*A2 - A1*B2 in (x2, y).
    auto re_rows = rows_of(s.p_re);
    auto im_rows = rows_of(s.p_im);
    MultiPoly B1 = re_rows[0];
    MultiPoly A1 = re_rows.size() > 1 ? re_rows[1] : MultiPoly(3);
    MultiPoly B2 = im_rows[0];
    MultiPoly A2 = im_rows.size() > 1 ? im_rows[1] : MultiPoly(3);
    if (A2.degree_in(0) > 0)
      throw Error(ErrorCode::Internal, "fast compile: A2 depends on x2");
    // A2 as a polynomial in y alone: y2 + const
    RatC d_im = work.coeff({1, 0});  // d coefficient; A2 = y2 + Im(d)
    a2_const_ = d_im.im;
    MultiPoly Q = B1 * A2 - A1 * B2;
    for (const auto& qq : Q.coeffs_in(0)) {
      MultiPoly qy(2);
      for (const auto& [e, cc] : qq.terms()) qy.add_term({e[1], e[2]}, cc);
      q_.push_back(compile(qy));
      max_pow_ = std::max<unsigned>(max_pow_, qy.degree_in(0) + 1);
      max_pow_ = std::max<unsigned>(max_pow_, qy.degree_in(1) + 1);
    }
  }
  max_pow_ = std::max<unsigned>(max_pow_, 2);
}

bool FastConicMembership::member(const Rat& y1, const Rat& y2) const {
  const Rat& u1 = swap_ ? y2 : y1;
  const Rat& u2 = swap_ ? y1 : y2;
  std::vector<Rat> pow1(max_pow_ + 1), pow2(max_pow_ + 1);
  pow1[0] = 1;
  pow2[0] = 1;
  for (unsigned k = 1; k <= max_pow_; ++k) {
    pow1[k] = pow1[k - 1] * u1;
    pow2[k] = pow2[k - 1] * u2;
  }
  auto fallback = [&]() {
    return member_conic_exact(original_, {y1, y2}, nullptr);
  };

  if (case_z1z2_) {
    Rat a2 = u2 + a2_const_;
    if (a2 == 0) return fallback();
    std::vector<Rat> qc(q_.size());
    bool all_zero = true;
    for (size_t k = 0; k < q_.size(); ++k) {
      qc[k] = q_[k].eval(pow1, pow2);
      if (qc[k] != 0) all_zero = false;
    }
    if (all_zero) return true;
    RealUniPoly Q{std::move(qc)};
    return has_real_root(Q);
  }

  Rat l0 = l0_.eval(pow1, pow2);
  if (l1_ == 0 && l0 == 0) return fallback();
  std::vector<Rat> rc(r_.size());
  bool all_zero = true;
  for (size_t k = 0; k < r_.size(); ++k) {
    rc[k] = r_[k].eval(pow1, pow2);
    if (rc[k] != 0) all_zero = false;
  }
  if (all_zero) return fallback();
  RealUniPoly R0{std::move(rc)};
  if (l1_ != 0) {
    Rat xstar = -l0 / l1_;
    if (R0.eval(xstar) == 0) return fallback();
  }
  return has_real_root(R0);
}

// ---------------------------------------------------------------------------
// Numeric n-dimensional membership (advisory)

bool member_quadric_numeric(const MultiPoly& p, const std::vector<Rat>& y,
                            double tol) {
  int n = p.nvars();
  if (static_cast<int>(y.size()) != n)
    throw Error(ErrorCode::Precondition, "point dimension mismatch");
  RealSplit s = split_real_imag(p);

  auto to_double = [](const Rat& q) { return mpq_get_d(q.get_mpq_t()); };
  std::vector<double> yd(n);
  double yscale = 1.0;
  for (int i = 0; i < n; ++i) {
    yd[i] = to_double(y[i]);
    yscale = std::max(yscale, std::fabs(yd[i]));
  }

  // dense double evaluation of p_re/p_im and gradients at (x, y)
  struct Term {
    std::vector<uint32_t> e;
    double c;
  };
  auto compile = [&](const MultiPoly& q) {
    std::vector<Term> t;
    for (const auto& [e, c] : q.terms()) t.push_back({e, to_double(c.re)});
    return t;
  };
  std::vector<Term> fre = compile(s.p_re), fim = compile(s.p_im);

  auto eval_part = [&](const std::vector<Term>& terms,
                       const std::vector<double>& x, double* val,
                       double* grad) {
    *val = 0;
    for (int i = 0; i < n; ++i) grad[i] = 0;
    for (const auto& t : terms) {
      double m = t.c;
      for (int i = 0; i < n; ++i)
        for (uint32_t k = 0; k < t.e[i]; ++k) m *= x[i];
      for (int i = n; i < 2 * n; ++i)
        for (uint32_t k = 0; k < t.e[i]; ++k) m *= yd[i - n];
      *val += m;
      // gradient in x only
      for (int i = 0; i < n; ++i) {
        if (t.e[i] == 0) continue;
        double g = t.c * t.e[i];
        for (int jj = 0; jj < n; ++jj) {
          uint32_t pow = t.e[jj] - (jj == i ? 1 : 0);
          for (uint32_t k = 0; k < pow; ++k) g *= x[jj];
        }
        for (int jj = n; jj < 2 * n; ++jj)
          for (uint32_t k = 0; k < t.e[jj]; ++k) g *= yd[jj - n];
        grad[i] += g;
      }
    }
  };

  std::vector<double> g1(n), g2(n);
  auto residual = [&](const std::vector<double>& x, double* f1, double* f2) {
    eval_part(fre, x, f1, g1.data());
    eval_part(fim, x, f2, g2.data());
    return std::sqrt(*f1 * *f1 + *f2 * *f2);
  };

  // deterministic multistart grid: 3^n points scaled by the data
  std::vector<double> levels = {-2.5 * yscale, 0.31 * yscale, 2.7 * yscale};
  long total = 1;
  for (int i = 0; i < n; ++i) total *= 3;

  for (long s0 = 0; s0 < total; ++s0) {
    std::vector<double> x(n);
    long idx = s0;
    for (int i = 0; i < n; ++i) {
      x[i] = levels[idx % 3];
      idx /= 3;
    }
    double f1, f2;
    double r = residual(x, &f1, &f2);
    for (int it = 0; it < 80 && r > tol * 0.5; ++it) {
      // Gauss-Newton step for the 2-row Jacobian J: d = -J^T (J J^T)^{-1} F
      double a11 = 0, a12 = 0, a22 = 0;
      for (int i = 0; i < n; ++i) {
        a11 += g1[i] * g1[i];
        a12 += g1[i] * g2[i];
        a22 += g2[i] * g2[i];
      }
      double det = a11 * a22 - a12 * a12;
      double w1, w2;
      if (std::fabs(det) < 1e-300) {
        double reg = 1e-12 * (a11 + a22) + 1e-300;
        w1 = f1 / (a11 + reg);
        w2 = f2 / (a22 + reg);
      } else {
        w1 = (a22 * f1 - a12 * f2) / det;
        w2 = (a11 * f2 - a12 * f1) / det;
      }
      std::vector<double> dir(n);
      for (int i = 0; i < n; ++i) dir[i] = -(g1[i] * w1 + g2[i] * w2);
      double step = 1.0;
      bool improved = false;
      for (int h = 0; h < 40; ++h) {
        std::vector<double> xn(n);
        for (int i = 0; i < n; ++i) xn[i] = x[i] + step * dir[i];
        double nf1, nf2;
        double nr = residual(xn, &nf1, &nf2);
        if (nr < r) {
          x = xn;
          r = nr;
          f1 = nf1;
          f2 = nf2;
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;
    }
    if (r < tol) return true;
  }
  return false;
}

}  // namespace improj
