// SPDX-License-Identifier: Apache-2.0

#include "improj/rational.hpp"

namespace improj {

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw Error(ErrorCode::Syntax, "empty rational literal");
  // mpq accepts forms we do not want (whitespace, hex); validate first.
  size_t i = 0;
  if (text[i] == '-' || text[i] == '+') ++i;
  bool digits = false, slash = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits = true;
    } else if (c == '/' && !slash && digits) {
      slash = true;
      digits = false;
    } else {
      throw Error(ErrorCode::Syntax,
                  "bad rational literal '" + text + "' (decimals not accepted)");
    }
  }
  if (!digits) throw Error(ErrorCode::Syntax, "bad rational literal '" + text + "'");
  Rat q;
  if (q.set_str(text, 10) != 0)
    throw Error(ErrorCode::Syntax, "bad rational literal '" + text + "'");
  if (q.get_den() == 0)
    throw Error(ErrorCode::Syntax, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

bool rational_sqrt(const Rat& q, Rat* root) {
  if (q < 0) return false;
  if (q == 0) {
    if (root) *root = 0;
    return true;
  }
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) ||
      !mpz_perfect_square_p(d.get_mpz_t()))
    return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  if (root) *root = Rat(rn, rd);
  return true;
}

bool complex_sqrt(const RatC& z, RatC* root) {
  // sqrt(x+iy) = u+iv with u^2 = (|z|+x)/2, v = y/(2u); exact iff |z| and the
  // intermediate squares are rational squares.
  if (z.im == 0) {
    Rat r;
    if (z.re >= 0) {
      if (!rational_sqrt(z.re, &r)) return false;
      if (root) *root = RatC(r);
      return true;
    }
    if (!rational_sqrt(-z.re, &r)) return false;
    if (root) *root = RatC(Rat(0), r);
    return true;
  }
  Rat abs2 = z.norm2();
  Rat absval;
  if (!rational_sqrt(abs2, &absval)) return false;
  Rat u2 = (absval + z.re) / 2;
  Rat u;
  if (!rational_sqrt(u2, &u)) return false;
  if (u == 0) return false;  // cannot happen for z.im != 0
  Rat v = z.im / (2 * u);
  if (root) *root = RatC(u, v);
  return true;
}

std::string ratc_str(const RatC& z) {
  if (z.im == 0) return rat_str(z.re);
  std::string im_part;
  if (z.im == 1)
    im_part = "i";
  else if (z.im == -1)
    im_part = "-i";
  else
    im_part = rat_str(z.im) + "i";
  if (z.re == 0) return im_part;
  std::string s = rat_str(z.re);
  if (z.im > 0) s += "+";
  return s + im_part;
}

RatInterval RatInterval::operator*(const RatInterval& o) const {
  Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  Rat mn = a, mx = a;
  for (const Rat* v : {&b, &c, &d}) {
    if (*v < mn) mn = *v;
    if (*v > mx) mx = *v;
  }
  return RatInterval(mn, mx);
}

RatInterval interval_sqrt_iv(const RatInterval& x, unsigned bits) {
  if (x.hi < 0) throw Error(ErrorCode::Domain, "sqrt of negative interval");
  Rat lo = x.lo < 0 ? Rat(0) : x.lo;
  RatInterval a = interval_sqrt(lo, bits);
  RatInterval b = interval_sqrt(x.hi, bits);
  return RatInterval(a.lo, b.hi);
}

RatInterval interval_sqrt(const Rat& q, unsigned bits) {
  if (q < 0) throw Error(ErrorCode::Domain, "interval_sqrt of negative value");
  if (q == 0) return RatInterval(Rat(0));
  // sqrt(n/d) = sqrt(n*d)/d; floor integer sqrt of n*d*4^bits gives the
  // directed enclosure of width 1/(d*2^bits).
  mpz_class n = q.get_num(), d = q.get_den();
  mpz_class scaled = n * d;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);
  den *= d;
  Rat lo(r, den), hi(r + 1, den);
  lo.canonicalize();
  hi.canonicalize();
  return RatInterval(lo, hi);
}

}  // namespace improj
