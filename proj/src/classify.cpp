// SPDX-License-Identifier: Apache-2.0

#include "improj/classify.hpp"

#include "improj/normalize.hpp"

namespace improj {

std::string arrangement_str(ArrangementTag tag) {
  switch (tag) {
    case ArrangementTag::DoubleReal: return "double-real";
    case ArrangementTag::TwoDistinctReal: return "two-distinct-real";
    case ArrangementTag::DoubleNonReal: return "double-non-real";
    case ArrangementTag::OneRealOneNonReal: return "one-real-one-non-real";
    case ArrangementTag::ConjugatePair: return "conjugate-pair";
    case ArrangementTag::TwoDistinctNonRealNonConjugate:
      return "two-distinct-non-real-non-conjugate";
  }
  return "?";
}

std::string conic_class_str(ConicClass c) {
  switch (c) {
    case ConicClass::C1a1: return "1a.1";
    case ConicClass::C1a2: return "1a.2";
    case ConicClass::C1b: return "1b";
    case ConicClass::C2a1: return "2a.1";
    case ConicClass::C2a2: return "2a.2";
    case ConicClass::C2b: return "2b";
    case ConicClass::C2c1: return "2c.1";
    case ConicClass::C2c2: return "2c.2";
  }
  return "?";
}

namespace {

// Number of distinct real roots of c0 t^2 + c1 t + c2 (complex coefficients,
// c0 != 0): common real roots of the real and imaginary part polynomials.
int distinct_real_affine_roots(const RatC& c0, const RatC& c1, const RatC& c2) {
  RealUniPoly re(std::vector<Rat>{c2.re, c1.re, c0.re});
  RealUniPoly im(std::vector<Rat>{c2.im, c1.im, c0.im});
  RealUniPoly common;
  if (im.is_zero())
    common = re;
  else if (re.is_zero())
    common = im;
  else
    common = gcd(re, im);
  if (common.is_zero() || common.degree() < 1) return 0;
  return sturm_count_all(common);
}

bool conjugate_proportional(const RatC& c0, const RatC& c1, const RatC& c2) {
  // (conj c0 : conj c1 : conj c2) == (c0 : c1 : c2) projectively.
  return (c0.conj() * c1 == c0 * c1.conj()) &&
         (c0.conj() * c2 == c0 * c2.conj()) &&
         (c1.conj() * c2 == c1 * c2.conj());
}

}  // namespace

RootArrangement root_arrangement(const BinaryForm& form) {
  if (form.is_zero()) throw Error(ErrorCode::Precondition, "zero binary form");
  if (form.degree != 2)
    throw Error(ErrorCode::Precondition, "root_arrangement needs degree 2");
  RootArrangement out;
  out.c0 = form.coeffs[0];
  out.c1 = form.coeffs[1];
  out.c2 = form.coeffs[2];
  const RatC &c0 = out.c0, &c1 = out.c1, &c2 = out.c2;

  if (c0.is_zero() && c1.is_zero()) {
    out.tag = ArrangementTag::DoubleReal;  // double root (1:0)
    out.roots_rational = true;
    out.roots = {ProjRoot{true, RatC()}, ProjRoot{true, RatC()}};
    return out;
  }
  if (c0.is_zero()) {
    // (1:0) and (-c2/c1 : 1).
    RatC t = -(c2 / c1);
    out.roots_rational = true;
    out.roots = {ProjRoot{true, RatC()}, ProjRoot{false, t}};
    out.tag = (t.im == 0) ? ArrangementTag::TwoDistinctReal
                          : ArrangementTag::OneRealOneNonReal;
    return out;
  }
  RatC disc = c1 * c1 - c2 * c0 * RatC(4);
  if (disc.is_zero()) {
    RatC t = -(c1 / (c0 * RatC(2)));
    out.roots_rational = true;
    out.roots = {ProjRoot{false, t}, ProjRoot{false, t}};
    out.tag = (t.im == 0) ? ArrangementTag::DoubleReal
                          : ArrangementTag::DoubleNonReal;
    return out;
  }
  RatC sq;
  if (complex_sqrt(disc, &sq)) {
    out.roots_rational = true;
    RatC r1 = (-c1 + sq) / (c0 * RatC(2));
    RatC r2 = (-c1 - sq) / (c0 * RatC(2));
    // Canonical order by (re, im).
    if (r2.re < r1.re || (r2.re == r1.re && r2.im < r1.im)) std::swap(r1, r2);
    out.roots = {ProjRoot{false, r1}, ProjRoot{false, r2}};
  }
  int reals = distinct_real_affine_roots(c0, c1, c2);
  if (reals == 2) {
    out.tag = ArrangementTag::TwoDistinctReal;
  } else if (reals == 1) {
    out.tag = ArrangementTag::OneRealOneNonReal;
  } else {
    out.tag = conjugate_proportional(c0, c1, c2)
                  ? ArrangementTag::ConjugatePair
                  : ArrangementTag::TwoDistinctNonRealNonConjugate;
  }
  return out;
}

ConicClass conic_class(const MultiPoly& p) {
  if (p.nvars() != 2)
    throw Error(ErrorCode::Precondition, "conic_class needs nvars=2");
  auto d = p.degree();
  if (!d || *d != 2)
    throw Error(ErrorCode::Precondition, "conic_class needs total degree 2");
  return normalize_conic(p).cls;
}

std::vector<std::vector<RatC>> quadratic_form_matrix(const MultiPoly& quad) {
  int n = quad.nvars();
  std::vector<std::vector<RatC>> m(n, std::vector<RatC>(n));
  for (const auto& [e, c] : quad.terms()) {
    if (exp_total(e) != 2) continue;
    int i = -1, j = -1;
    for (int k = 0; k < n; ++k) {
      if (e[k] == 2) { i = j = k; break; }
      if (e[k] == 1) {
        if (i < 0) i = k; else j = k;
      }
    }
    if (i == j) {
      m[i][i] = c;
    } else {
      RatC half = c / RatC(2);
      m[i][j] = half;
      m[j][i] = half;
    }
  }
  return m;
}

void congruence_diagonalize(const RatMatrix& m_in, std::vector<Rat>* diag,
                            RatMatrix* s_out) {
  size_t n = m_in.size();
  RatMatrix m = m_in;
  RatMatrix s = identity_matrix(static_cast<int>(n));
  auto add_col = [&](size_t dst, size_t src, const Rat& f) {
    // congruence step v_dst += f * v_src: column op then matching row op
    for (size_t r = 0; r < n; ++r) m[r][dst] += f * m[r][src];
    for (size_t c = 0; c < n; ++c) m[dst][c] += f * m[src][c];
    for (size_t r = 0; r < n; ++r) s[r][dst] += f * s[r][src];
  };
  auto swap_cols = [&](size_t a, size_t b) {
    for (size_t r = 0; r < n; ++r) std::swap(m[r][a], m[r][b]);
    for (size_t c = 0; c < n; ++c) std::swap(m[a][c], m[b][c]);
    for (size_t r = 0; r < n; ++r) std::swap(s[r][a], s[r][b]);
  };
  for (size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      size_t j = k + 1;
      while (j < n && m[j][j] == 0) ++j;
      if (j < n) {
        swap_cols(k, j);
      } else {
        // all remaining diagonal zero; find off-diagonal entry
        size_t a = n, bcol = n;
        for (size_t i = k; i < n && a == n; ++i)
          for (size_t jj = i + 1; jj < n; ++jj)
            if (m[i][jj] != 0) { a = i; bcol = jj; break; }
        if (a == n) break;  // zero block
        if (a != k) swap_cols(k, a);
        add_col(k, bcol, Rat(1));
      }
    }
    for (size_t i = k + 1; i < n; ++i) {
      if (m[k][i] == 0) continue;
      add_col(i, k, -m[k][i] / m[k][k]);
    }
  }
  if (diag) {
    diag->assign(n, Rat(0));
    for (size_t i = 0; i < n; ++i) (*diag)[i] = m[i][i];
  }
  if (s_out) *s_out = s;
}

HyperbolicityReport is_hyperbolic_initial(const MultiPoly& p) {
  auto d = p.degree();
  if (!d || *d != 2)
    throw Error(ErrorCode::Precondition, "is_hyperbolic_initial needs degree 2");
  MultiPoly init = p.initial_form();
  auto cm = quadratic_form_matrix(init);
  int n = p.nvars();
  bool re_zero = true, im_zero = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (cm[i][j].re != 0) re_zero = false;
      if (cm[i][j].im != 0) im_zero = false;
    }
  HyperbolicityReport rep;
  std::optional<RatC> lambda;
  if (im_zero) {
    lambda = RatC(1);
  } else if (re_zero) {
    lambda = RatC(Rat(0), Rat(-1));  // -i
  } else {
    // need C_im = t * C_re with rational t
    Rat t;
    bool found = false, ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        if (cm[i][j].re == 0) {
          if (cm[i][j].im != 0) ok = false;
          continue;
        }
        Rat ratio = cm[i][j].im / cm[i][j].re;
        if (!found) {
          t = ratio;
          found = true;
        } else if (ratio != t) {
          ok = false;
        }
      }
    if (ok && found) lambda = RatC(1) / RatC(Rat(1), t);  // 1/(1+it)
  }
  if (!lambda) return rep;  // not proportional: no real scaling exists

  // Real symmetric matrix of lambda * init.
  RatMatrix m(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RatC v = *lambda * cm[i][j];
      if (v.im != 0) throw Error(ErrorCode::Internal, "scaling not real");
      m[i][j] = v.re;
    }
  std::vector<Rat> diag;
  congruence_diagonalize(m, &diag, nullptr);
  int np = 0, nm = 0;
  for (const auto& v : diag) {
    if (v > 0) ++np;
    if (v < 0) ++nm;
  }
  // Normalize so the minus count is the small side.
  if (np < nm) {
    lambda = -*lambda;
    std::swap(np, nm);
  }
  rep.realizing_scalar = lambda;
  rep.n_plus = np;
  rep.n_minus = nm;
  rep.rank = np + nm;
  rep.hyperbolic = (rep.rank == 1) || (nm == 1 && np >= 1);
  return rep;
}

}  // namespace improj
