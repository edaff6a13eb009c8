// SPDX-License-Identifier: Apache-2.0

#include "improj/realroots.hpp"

#include <algorithm>

namespace improj {

QuarticCriteria quartic_has_real_root(const Rat& a0, const Rat& a1,
                                      const Rat& a2, const Rat& a3,
                                      const Rat& a4) {
  if (a4 == 0)
    throw Error(ErrorCode::Precondition, "quartic criteria need a4 != 0");
  QuarticCriteria c;
  c.P = 8 * a2 * a4 - 3 * a3 * a3;
  c.R = a3 * a3 * a3 + 8 * a1 * a4 * a4 - 4 * a4 * a3 * a2;
  c.D = 64 * a4 * a4 * a4 * a0 - 16 * a4 * a4 * a2 * a2 +
        16 * a4 * a3 * a3 * a2 - 16 * a4 * a4 * a3 * a1 - 3 * a3 * a3 * a3 * a3;
  // Degree-six invariant of the coefficients; cross-checked against the
  // Sylvester route in the tests.
  const Rat &a = a4, &b = a3, &cc = a2, &d = a1, &e = a0;
  c.disc = 256 * a * a * a * e * e * e - 192 * a * a * b * d * e * e -
           128 * a * a * cc * cc * e * e + 144 * a * a * cc * d * d * e -
           27 * a * a * d * d * d * d + 144 * a * b * b * cc * e * e -
           6 * a * b * b * d * d * e - 80 * a * b * cc * cc * d * e +
           18 * a * b * cc * d * d * d + 16 * a * cc * cc * cc * cc * e -
           4 * a * cc * cc * cc * d * d - 27 * b * b * b * b * e * e +
           18 * b * b * b * cc * d * e - 4 * b * b * b * d * d * d -
           4 * b * b * cc * cc * cc * e + b * b * cc * cc * d * d;
  int sd = sign(c.disc);
  if (sd < 0) {
    c.has_root = true;
  } else if (sd > 0) {
    c.has_root = (c.P < 0 && c.D < 0);
  } else {
    c.has_root = !(c.D == 0 && c.R == 0 && c.P > 0);
  }
  return c;
}

MultiPoly exact_divide(const MultiPoly& f, const MultiPoly& g) {
  MultiPoly q;
  if (!try_divide(f, g, &q))
    throw Error(ErrorCode::Domain, "exact_divide: not divisible");
  return q;
}

bool try_divide(const MultiPoly& f, const MultiPoly& g, MultiPoly* quot) {
  if (g.is_zero()) throw Error(ErrorCode::Precondition, "division by zero");
  int n = f.nvars();
  MultiPoly r = f;
  MultiPoly q(n);
  const auto& glead = *g.terms().begin();
  while (!r.is_zero()) {
    const auto& rlead = *r.terms().begin();
    ExpVec diff(n);
    for (int j = 0; j < n; ++j) {
      if (rlead.first[j] < glead.first[j]) return false;
      diff[j] = rlead.first[j] - glead.first[j];
    }
    RatC c = rlead.second / glead.second;
    MultiPoly m = MultiPoly::monomial(n, diff, c);
    q = q + m;
    r = r - m * g;
  }
  if (quot) *quot = q;
  return true;
}

namespace {

// Fraction-free determinant (Bareiss) over the polynomial ring.
MultiPoly bareiss_det(std::vector<std::vector<MultiPoly>> m, int nvars) {
  size_t n = m.size();
  if (n == 0) return MultiPoly::constant(nvars, RatC(1));
  int sign_flips = 0;
  MultiPoly prev = MultiPoly::constant(nvars, RatC(1));
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return MultiPoly(nvars);  // singular
      std::swap(m[k], m[swap_row]);
      ++sign_flips;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        MultiPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = num.is_zero() ? MultiPoly(nvars) : exact_divide(num, prev);
      }
      m[i][k] = MultiPoly(nvars);
    }
    prev = m[k][k];
  }
  MultiPoly det = m[n - 1][n - 1];
  return (sign_flips % 2) ? -det : det;
}

}  // namespace

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, int var) {
  int n = f.nvars();
  if (g.nvars() != n) throw Error(ErrorCode::Precondition, "arity mismatch");
  if (f.is_zero() || g.is_zero())
    throw Error(ErrorCode::Precondition, "resultant of zero polynomial");
  int df = f.degree_in(var), dg = g.degree_in(var);
  if (df == 0 && dg == 0)
    throw Error(ErrorCode::Precondition,
                "resultant: both inputs constant in the variable");
  auto fc = f.coeffs_in(var), gc = g.coeffs_in(var);
  if (df == 0) return f.pow(static_cast<unsigned>(dg));
  if (dg == 0) return g.pow(static_cast<unsigned>(df));
  size_t size = static_cast<size_t>(df + dg);
  std::vector<std::vector<MultiPoly>> m(size,
                                        std::vector<MultiPoly>(size, MultiPoly(n)));
  // dg rows of f-coefficients (descending), then df rows of g.
  for (int r = 0; r < dg; ++r)
    for (int k = 0; k <= df; ++k) m[r][r + k] = fc[df - k];
  for (int r = 0; r < df; ++r)
    for (int k = 0; k <= dg; ++k) m[dg + r][r + k] = gc[dg - k];
  return bareiss_det(std::move(m), n);
}

MultiPoly discriminant(const MultiPoly& f, int var) {
  int d = f.degree_in(var);
  if (d < 1)
    throw Error(ErrorCode::Precondition, "discriminant: constant in variable");
  MultiPoly res = resultant(f, f.derivative(var), var);
  MultiPoly lc = f.coeffs_in(var)[d];
  MultiPoly disc = exact_divide(res, lc);
  bool negate = ((static_cast<long>(d) * (d - 1)) / 2) % 2 == 1;
  return negate ? -disc : disc;
}

Rat rational_content(const MultiPoly& f) {
  if (f.is_zero()) return Rat(0);
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [e, c] : f.terms()) {
    if (c.im != 0)
      throw Error(ErrorCode::Precondition, "content of non-real polynomial");
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
            c.re.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            c.re.get_den().get_mpz_t());
  }
  Rat content(num_gcd, den_lcm);
  content.canonicalize();
  return content;
}

MultiPoly canonical_primitive(const MultiPoly& f) {
  if (f.is_zero()) return f;
  Rat c = rational_content(f);
  MultiPoly g = f.scaled(RatC(Rat(1) / c));
  if (g.terms().begin()->second.re < 0) g = -g;
  return g;
}

bool proportional_over_q(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero() || g.is_zero()) return false;
  return canonical_primitive(f) == canonical_primitive(g);
}

namespace {

int first_active_var(const MultiPoly& f, const MultiPoly& g) {
  int n = f.nvars();
  for (int v = 0; v < n; ++v)
    if (f.degree_in(v) > 0 || g.degree_in(v) > 0) return v;
  return -1;
}

MultiPoly content_in(const MultiPoly& f, int var) {
  auto cs = f.coeffs_in(var);
  MultiPoly acc(f.nvars());
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    acc = acc.is_zero() ? canonical_primitive(c) : mv_gcd(acc, c);
    if (!acc.degree() || *acc.degree() == 0) return MultiPoly::constant(f.nvars(), RatC(1));
  }
  return acc;
}

// Pseudo-remainder of a by b with respect to var.
MultiPoly pseudo_rem(MultiPoly a, const MultiPoly& b, int var) {
  int db = b.degree_in(var);
  MultiPoly lb = b.coeffs_in(var)[db];
  int steps = a.degree_in(var) - db + 1;
  int done = 0;
  while (!a.is_zero() && a.degree_in(var) >= db) {
    int da = a.degree_in(var);
    MultiPoly la = a.coeffs_in(var)[da];
    ExpVec shift(a.nvars(), 0);
    shift[var] = static_cast<uint32_t>(da - db);
    MultiPoly t = MultiPoly::monomial(a.nvars(), shift, RatC(1)) * la * b;
    a = a * lb - t;
    ++done;
  }
  // Pad to the canonical lc(b)^(deg a - deg b + 1) power.
  for (; done < steps; ++done) a = a * lb;
  return a;
}

}  // namespace

MultiPoly mv_gcd(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero()) return canonical_primitive(g);
  if (g.is_zero()) return canonical_primitive(f);
  if (!f.is_real() || !g.is_real())
    throw Error(ErrorCode::Precondition, "mv_gcd requires real coefficients");
  int n = f.nvars();
  if ((f.degree() && *f.degree() == 0) || (g.degree() && *g.degree() == 0))
    return MultiPoly::constant(n, RatC(1));
  int v = first_active_var(f, g);
  if (v < 0) return MultiPoly::constant(n, RatC(1));
  if (f.degree_in(v) == 0) return mv_gcd(f, content_in(g, v));
  if (g.degree_in(v) == 0) return mv_gcd(g, content_in(f, v));

  MultiPoly cf = content_in(f, v), cg = content_in(g, v);
  MultiPoly a = exact_divide(f, cf), b = exact_divide(g, cg);
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  while (true) {
    MultiPoly r = pseudo_rem(a, b, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      b = MultiPoly::constant(n, RatC(1));
      break;
    }
    a = std::move(b);
    // Primitive PRS: strip content each round to keep coefficients small.
    b = exact_divide(r, content_in(r, v));
    b = canonical_primitive(b);
  }
  MultiPoly prim = canonical_primitive(exact_divide(b, content_in(b, v)));
  return canonical_primitive(mv_gcd(cf, cg) * prim);
}

MultiPoly squarefree_part_mv(const MultiPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::Precondition, "zero polynomial");
  if (!f.is_real())
    throw Error(ErrorCode::Precondition, "squarefree part needs real coefficients");
  MultiPoly g = canonical_primitive(f);
  if (*g.degree() == 0) return MultiPoly::constant(f.nvars(), RatC(1));
  MultiPoly d(f.nvars());
  for (int v = 0; v < f.nvars(); ++v) {
    if (g.degree_in(v) == 0) continue;
    MultiPoly pd = g.derivative(v);
    d = d.is_zero() ? canonical_primitive(pd) : mv_gcd(d, pd);
  }
  MultiPoly common = mv_gcd(g, d);
  return canonical_primitive(exact_divide(g, common));
}

MultiPoly odd_multiplicity_part(const MultiPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::Precondition, "zero polynomial");
  MultiPoly fk = canonical_primitive(f);
  // Layers: s_k = squarefree(f_{k-1}) collects factors of multiplicity >= k;
  // the multiplicity-k slice is s_k / s_{k+1}.
  std::vector<MultiPoly> s;
  while (fk.degree() && *fk.degree() > 0) {
    MultiPoly sk = squarefree_part_mv(fk);
    s.push_back(sk);
    fk = canonical_primitive(exact_divide(fk, sk));
  }
  MultiPoly odd = MultiPoly::constant(f.nvars(), RatC(1));
  for (size_t k = 0; k < s.size(); ++k) {
    MultiPoly layer =
        (k + 1 < s.size()) ? exact_divide(s[k], s[k + 1]) : s[k];
    if ((k % 2) == 0) odd = odd * layer;  // multiplicity k+1 odd
  }
  return canonical_primitive(odd);
}

RealUniPoly to_unipoly(const MultiPoly& f, int var) {
  std::vector<Rat> coeffs(static_cast<size_t>(std::max(f.degree_in(var), 0)) + 1,
                          Rat(0));
  for (const auto& [e, c] : f.terms()) {
    if (c.im != 0)
      throw Error(ErrorCode::Precondition, "to_unipoly needs real coefficients");
    for (size_t j = 0; j < e.size(); ++j)
      if (static_cast<int>(j) != var && e[j] != 0)
        throw Error(ErrorCode::Precondition,
                    "to_unipoly: polynomial involves other variables");
    coeffs[e[var]] = c.re;
  }
  return RealUniPoly(std::move(coeffs));
}

MultiPoly from_unipoly(const RealUniPoly& f, int var, int nvars) {
  MultiPoly out(nvars);
  for (size_t k = 0; k < f.coeffs().size(); ++k) {
    if (f.coeffs()[k] == 0) continue;
    ExpVec e(nvars, 0);
    e[var] = static_cast<uint32_t>(k);
    out.add_term(e, RatC(f.coeffs()[k]));
  }
  return out;
}

BinaryRealRoot binary_form_has_real_root(const BinaryForm& form) {
  if (form.is_zero())
    throw Error(ErrorCode::Precondition, "zero binary form");
  BinaryRealRoot out;
  // (1:0) is a root iff the z1^d coefficient vanishes.
  if (form.coeffs[0].is_zero()) {
    out.has_root = true;
    out.at_infinity = true;
  }
  // Dehomogenize at z2=1: sum c_j t^(d-j); split into real and imaginary.
  std::vector<Rat> re(form.degree + 1, Rat(0)), im(form.degree + 1, Rat(0));
  for (int j = 0; j <= form.degree; ++j) {
    re[form.degree - j] = form.coeffs[j].re;
    im[form.degree - j] = form.coeffs[j].im;
  }
  RealUniPoly A{std::vector<Rat>(re)}, B{std::vector<Rat>(im)};
  RealUniPoly common;
  if (A.is_zero())
    common = B;
  else if (B.is_zero())
    common = A;
  else
    common = gcd(A, B);
  if (!common.is_zero() && common.degree() >= 1 && sturm_count_all(common) > 0) {
    out.has_root = true;
    auto rr = rational_roots(common);
    if (!rr.empty()) out.rational_root = rr.front();
  }
  return out;
}

}  // namespace improj
