// SPDX-License-Identifier: Apache-2.0
//
// Exact rational scalars (GMP) and rational-complex numbers, plus directed
// rational intervals used where a normalization step needs a square root.

#ifndef IMPROJ_RATIONAL_HPP
#define IMPROJ_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace improj {

using Rat = mpq_class;

enum class ErrorCode {
  Syntax = 1,
  Precondition = 2,
  Domain = 3,
  Internal = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline int sign(const Rat& q) { return sgn(q); }

// Parses "p", "-p/q" decimal-free rationals. Throws Error(Syntax) otherwise.
Rat parse_rat(const std::string& text);
std::string rat_str(const Rat& q);

// True iff q is the square of a rational; root receives the non-negative root.
bool rational_sqrt(const Rat& q, Rat* root);

struct RatC;
// True iff z is the square of a rational-complex number; root receives the
// principal choice (re > 0, or re = 0 and im >= 0).
bool complex_sqrt(const RatC& z, RatC* root);

struct RatC {
  Rat re, im;

  RatC() : re(0), im(0) {}
  RatC(Rat r) : re(std::move(r)), im(0) {}
  RatC(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  RatC(long r) : re(r), im(0) {}
  RatC(long r, long i) : re(r), im(i) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  RatC conj() const { return RatC(re, -im); }
  // |z|^2, exact.
  Rat norm2() const { return re * re + im * im; }

  RatC operator-() const { return RatC(-re, -im); }
  RatC operator+(const RatC& o) const { return RatC(re + o.re, im + o.im); }
  RatC operator-(const RatC& o) const { return RatC(re - o.re, im - o.im); }
  RatC operator*(const RatC& o) const {
    return RatC(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  RatC inv() const {
    Rat n = norm2();
    if (n == 0) throw Error(ErrorCode::Domain, "division by zero");
    return RatC(re / n, -im / n);
  }
  RatC operator/(const RatC& o) const { return *this * o.inv(); }

  RatC& operator+=(const RatC& o) { re += o.re; im += o.im; return *this; }
  RatC& operator-=(const RatC& o) { re -= o.re; im -= o.im; return *this; }
  RatC& operator*=(const RatC& o) { *this = *this * o; return *this; }

  bool operator==(const RatC& o) const { return re == o.re && im == o.im; }
  bool operator!=(const RatC& o) const { return !(*this == o); }
};

inline RatC imag_unit() { return RatC(Rat(0), Rat(1)); }

std::string ratc_str(const RatC& z);

// Closed interval [lo, hi] with rational endpoints; all operations round
// outward, so a value contained on entry stays contained.
struct RatInterval {
  Rat lo, hi;

  RatInterval() : lo(0), hi(0) {}
  explicit RatInterval(const Rat& v) : lo(v), hi(v) {}
  RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw Error(ErrorCode::Internal, "inverted interval");
  }

  bool is_point() const { return lo == hi; }
  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }

  RatInterval operator-() const { return RatInterval(-hi, -lo); }
  RatInterval operator+(const RatInterval& o) const {
    return RatInterval(lo + o.lo, hi + o.hi);
  }
  RatInterval operator-(const RatInterval& o) const {
    return RatInterval(lo - o.hi, hi - o.lo);
  }
  RatInterval operator*(const RatInterval& o) const;
};

// Encloses sqrt(q) for q >= 0 with width <= 2^-bits.
RatInterval interval_sqrt(const Rat& q, unsigned bits);

// Outward enclosure of sqrt over an interval (negative slack clamped to 0).
RatInterval interval_sqrt_iv(const RatInterval& x, unsigned bits);

// Complex number with interval-valued parts (exact when both are points).
struct RatCI {
  RatInterval re, im;

  RatCI() = default;
  explicit RatCI(const RatC& z) : re(z.re), im(z.im) {}
  RatCI(RatInterval r, RatInterval i) : re(std::move(r)), im(std::move(i)) {}

  bool exact() const { return re.is_point() && im.is_point(); }
  RatC center() const { return RatC(re.mid(), im.mid()); }

  RatCI operator+(const RatCI& o) const { return {re + o.re, im + o.im}; }
  RatCI operator-(const RatCI& o) const { return {re - o.re, im - o.im}; }
  RatCI operator*(const RatCI& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
};

}  // namespace improj

#endif  // IMPROJ_RATIONAL_HPP
