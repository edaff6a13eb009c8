// SPDX-License-Identifier: Apache-2.0

#include "improj/unipoly.hpp"

#include <algorithm>

#include "improj/realroots.hpp"

namespace improj {

const Rat& RealUniPoly::leading() const {
  if (c_.empty()) throw Error(ErrorCode::Precondition, "zero polynomial");
  return c_.back();
}

Rat RealUniPoly::eval(const Rat& x) const {
  Rat acc = 0;
  for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
  return acc;
}

int RealUniPoly::sign_at_pos_inf() const {
  if (c_.empty()) return 0;
  return sign(c_.back());
}

int RealUniPoly::sign_at_neg_inf() const {
  if (c_.empty()) return 0;
  int s = sign(c_.back());
  return (degree() % 2 == 0) ? s : -s;
}

RealUniPoly RealUniPoly::operator-() const {
  std::vector<Rat> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
  return RealUniPoly(std::move(r));
}

RealUniPoly RealUniPoly::operator+(const RealUniPoly& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return RealUniPoly(std::move(r));
}

RealUniPoly RealUniPoly::operator-(const RealUniPoly& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return RealUniPoly(std::move(r));
}

RealUniPoly RealUniPoly::operator*(const RealUniPoly& o) const {
  if (c_.empty() || o.c_.empty()) return RealUniPoly();
  std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return RealUniPoly(std::move(r));
}

RealUniPoly RealUniPoly::scaled(const Rat& s) const {
  if (s == 0) return RealUniPoly();
  std::vector<Rat> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
  return RealUniPoly(std::move(r));
}

RealUniPoly RealUniPoly::derivative() const {
  if (c_.size() <= 1) return RealUniPoly();
  std::vector<Rat> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(i);
  return RealUniPoly(std::move(r));
}

RealUniPoly RealUniPoly::monic() const {
  if (c_.empty()) return *this;
  return scaled(Rat(1) / c_.back());
}

void RealUniPoly::divmod(const RealUniPoly& a, const RealUniPoly& b,
                         RealUniPoly* quot, RealUniPoly* rem) {
  if (b.is_zero()) throw Error(ErrorCode::Precondition, "division by zero poly");
  std::vector<Rat> r = a.c_;
  int db = b.degree();
  std::vector<Rat> q(std::max<int>(a.degree() - db + 1, 0), Rat(0));
  const Rat& lb = b.c_.back();
  for (int k = static_cast<int>(r.size()) - 1; k >= db; --k) {
    if (r[k] == 0) continue;
    Rat f = r[k] / lb;
    q[k - db] = f;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
    r[k] = 0;  // kill rounding-free residue exactly
  }
  if (quot) *quot = RealUniPoly(std::move(q));
  if (rem) *rem = RealUniPoly(std::move(r));
}

RealUniPoly gcd(const RealUniPoly& a, const RealUniPoly& b) {
  RealUniPoly x = a, y = b;
  while (!y.is_zero()) {
    RealUniPoly r;
    RealUniPoly::divmod(x, y, nullptr, &r);
    x = std::move(y);
    y = r.is_zero() ? r : r.monic();  // normalize to tame growth
  }
  return x.is_zero() ? x : x.monic();
}

RealUniPoly squarefree_part(const RealUniPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::Precondition, "zero polynomial");
  if (f.degree() == 0) return RealUniPoly::constant(Rat(1));
  RealUniPoly g = gcd(f, f.derivative());
  if (g.degree() == 0) return f;
  RealUniPoly q;
  RealUniPoly::divmod(f, g, &q, nullptr);
  return q;
}

SturmChain SturmChain::build(const RealUniPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::Precondition, "zero polynomial");
  SturmChain ch;
  RealUniPoly f0 = squarefree_part(f);
  ch.seq.push_back(f0);
  if (f0.degree() >= 1) {
    ch.seq.push_back(f0.derivative());
    while (true) {
      const RealUniPoly& a = ch.seq[ch.seq.size() - 2];
      const RealUniPoly& b = ch.seq.back();
      if (b.degree() <= 0) break;
      RealUniPoly r;
      RealUniPoly::divmod(a, b, nullptr, &r);
      if (r.is_zero()) break;
      // scale by a positive rational only; signs carry the information
      RealUniPoly next = -r;
      ch.seq.push_back(next.scaled(Rat(1) / abs(next.leading())));
    }
  }
  return ch;
}

int SturmChain::variations(const XRat& x) const {
  int var = 0, prev = 0;
  for (const auto& p : seq) {
    int s;
    switch (x.kind) {
      case XRat::NegInf: s = p.sign_at_neg_inf(); break;
      case XRat::PosInf: s = p.sign_at_pos_inf(); break;
      default: s = p.sign_at(x.value); break;
    }
    if (s == 0) continue;  // dropping zeros evaluates the right limit
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

int sturm_count(const RealUniPoly& f, const XRat& a, const XRat& b) {
  if (f.is_zero()) throw Error(ErrorCode::Precondition, "zero polynomial");
  if (f.degree() == 0) return 0;
  SturmChain ch = SturmChain::build(f);
  return ch.variations(a) - ch.variations(b);
}

int sturm_count_all(const RealUniPoly& f) {
  return sturm_count(f, XRat::neg_inf(), XRat::pos_inf());
}

Rat root_bound(const RealUniPoly& f) {
  if (f.is_zero() || f.degree() == 0) return Rat(1);
  Rat m = 0;
  const auto& c = f.coeffs();
  for (size_t i = 0; i + 1 < c.size(); ++i) {
    Rat a = abs(c[i] / c.back());
    if (a > m) m = a;
  }
  return m + 1;
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const RealUniPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::Precondition, "zero polynomial");
  std::vector<std::pair<Rat, Rat>> out;
  if (f.degree() == 0) return out;
  RealUniPoly g = squarefree_part(f);
  SturmChain ch = SturmChain::build(g);
  Rat bound = root_bound(g);
  struct Cell { Rat lo, hi; int count; };
  auto count_on = [&](const Rat& lo, const Rat& hi) {
    return ch.variations(XRat::finite(lo)) - ch.variations(XRat::finite(hi));
  };
  std::vector<Cell> stack;
  int total = count_on(-bound, bound);
  if (total > 0) stack.push_back({-bound, bound, total});
  while (!stack.empty()) {
    Cell cell = stack.back();
    stack.pop_back();
    if (cell.count == 1) {
      // Refine until the root is cleanly interior or pinned to a rational.
      Rat lo = cell.lo, hi = cell.hi;
      while (true) {
        if (g.eval(hi) == 0) {
          out.push_back({hi, hi});
          break;
        }
        if (g.eval(lo) != 0) {
          out.push_back({lo, hi});
          break;
        }
        // lo is a root that belongs to the neighbouring cell; shrink.
        Rat mid = (lo + hi) / 2;
        if (count_on(mid, hi) == 1)
          lo = mid;
        else
          hi = mid;
      }
      continue;
    }
    Rat mid = (cell.lo + cell.hi) / 2;
    int left = count_on(cell.lo, mid);
    if (left > 0) stack.push_back({cell.lo, mid, left});
    if (cell.count - left > 0) stack.push_back({mid, cell.hi, cell.count - left});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // detach intervals that share a (non-root) endpoint
  for (size_t i = 1; i < out.size(); ++i) {
    while (out[i].first < out[i - 1].second ||
           (out[i].first == out[i - 1].second &&
            out[i].first != out[i].second)) {
      Rat mid = (out[i].first + out[i].second) / 2;
      if (g.eval(mid) == 0) {
        out[i] = {mid, mid};
        break;
      }
      if (count_on(mid, out[i].second) == 1)
        out[i].first = mid;
      else
        out[i].second = mid;
    }
  }
  return out;
}

namespace {

std::vector<mpz_class> small_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> primes;
  mpz_class d = 2;
  while (d * d <= n && d < 100000) {
    while (n % d == 0) {
      primes.push_back(d);
      n /= d;
    }
    ++d;
  }
  if (n > 1) primes.push_back(n);
  std::vector<mpz_class> divs{1};
  for (size_t i = 0; i < primes.size();) {
    size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    size_t mult = j - i;
    size_t base = divs.size();
    mpz_class pw = 1;
    for (size_t e = 1; e <= mult; ++e) {
      pw *= primes[i];
      for (size_t k = 0; k < base; ++k) divs.push_back(divs[k] * pw);
    }
    i = j;
  }
  std::sort(divs.begin(), divs.end());
  divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
  return divs;
}

}  // namespace

std::vector<Rat> rational_roots(const RealUniPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::Precondition, "zero polynomial");
  std::vector<Rat> out;
  RealUniPoly g = f;
  // strip powers of x
  while (!g.is_zero() && g.coeff(0) == 0) {
    if (out.empty()) out.push_back(Rat(0));
    std::vector<Rat> c(g.coeffs().begin() + 1, g.coeffs().end());
    g = RealUniPoly(std::move(c));
  }
  if (g.degree() < 1) {
    std::sort(out.begin(), out.end());
    return out;
  }
  // integer-normalize
  mpz_class den_lcm = 1;
  for (const auto& c : g.coeffs())
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            c.get_den().get_mpz_t());
  std::vector<mpz_class> ic;
  for (const auto& c : g.coeffs())
    ic.push_back(mpz_class(c * Rat(den_lcm)));
  for (const auto& p : small_divisors(ic.front()))
    for (const auto& q : small_divisors(ic.back()))
      for (int s : {1, -1}) {
        Rat cand(s * p, q);
        cand.canonicalize();
        if (g.eval(cand) == 0) out.push_back(cand);
      }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool has_real_root(const RealUniPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::Precondition, "zero polynomial");
  int d = f.degree();
  if (d == 0) return false;
  if (d % 2 == 1) return true;
  const auto& c = f.coeffs();
  if (d == 2) {
    Rat disc = c[1] * c[1] - 4 * c[2] * c[0];
    return disc >= 0;
  }
  if (d == 4) {
    return quartic_has_real_root(c[0], c[1], c[2], c[3], c[4]).has_root;
  }
  return sturm_count_all(f) > 0;
}

}  // namespace improj
