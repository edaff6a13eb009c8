// SPDX-License-Identifier: Apache-2.0

#include "improj/transform.hpp"

namespace improj {

Rat matrix_det(const RatMatrix& a) {
  size_t n = a.size();
  RatMatrix m = a;
  Rat det = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      Rat f = m[i][k] / m[k][k];
      for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

RatMatrix matrix_inverse(const RatMatrix& a) {
  size_t n = a.size();
  RatMatrix m = a;
  RatMatrix inv = identity_matrix(static_cast<int>(n));
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) throw Error(ErrorCode::Precondition, "singular matrix");
    std::swap(m[piv], m[k]);
    std::swap(inv[piv], inv[k]);
    Rat d = m[k][k];
    for (size_t j = 0; j < n; ++j) {
      m[k][j] /= d;
      inv[k][j] /= d;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == k || m[i][k] == 0) continue;
      Rat f = m[i][k];
      for (size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[k][j];
        inv[i][j] -= f * inv[k][j];
      }
    }
  }
  return inv;
}

RatMatrix matrix_mul(const RatMatrix& a, const RatMatrix& b) {
  size_t n = a.size(), m = b[0].size(), inner = b.size();
  RatMatrix r(n, std::vector<Rat>(m, Rat(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

std::vector<Rat> matrix_apply(const RatMatrix& a, const std::vector<Rat>& v) {
  std::vector<Rat> r(a.size(), Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  return r;
}

RatMatrix identity_matrix(int n) {
  RatMatrix m(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

AffineTransform AffineTransform::identity(int n) {
  return {RatC(1), identity_matrix(n), std::vector<RatC>(n)};
}

void AffineTransform::validate() const {
  size_t n = A.size();
  if (n == 0 || b.size() != n)
    throw Error(ErrorCode::Precondition, "transform shape mismatch");
  for (const auto& row : A)
    if (row.size() != n)
      throw Error(ErrorCode::Precondition, "transform shape mismatch");
  if (lambda.is_zero())
    throw Error(ErrorCode::Precondition, "transform scalar must be nonzero");
  if (matrix_det(A) == 0)
    throw Error(ErrorCode::Precondition, "transform matrix is singular");
}

AffineTransform AffineTransform::inverse() const {
  RatMatrix ai = matrix_inverse(A);
  // q = lambda p(Az+b)  =>  p = lambda^-1 q(A^-1 z - A^-1 b)
  std::vector<RatC> bi(b.size());
  for (size_t i = 0; i < b.size(); ++i) {
    RatC acc;
    for (size_t j = 0; j < b.size(); ++j) acc += b[j] * RatC(ai[i][j]);
    bi[i] = -acc;
  }
  return {lambda.inv(), std::move(ai), std::move(bi)};
}

AffineTransform AffineTransform::after(const AffineTransform& other) const {
  // this(other(p)) = this.lambda*other.lambda * p(other.A(this.A z + this.b) + other.b)
  const AffineTransform& t2 = *this;
  const AffineTransform& t1 = other;
  RatMatrix a = matrix_mul(t1.A, t2.A);
  std::vector<RatC> bb(b.size());
  for (size_t i = 0; i < b.size(); ++i) {
    RatC acc = t1.b[i];
    for (size_t j = 0; j < b.size(); ++j) acc += RatC(t1.A[i][j]) * t2.b[j];
    bb[i] = acc;
  }
  return {t1.lambda * t2.lambda, std::move(a), std::move(bb)};
}

std::vector<RatC> AffineTransform::apply_complex(const std::vector<RatC>& z) const {
  std::vector<RatC> r(b);
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A.size(); ++j) r[i] += RatC(A[i][j]) * z[j];
  return r;
}

std::vector<Rat> AffineTransform::imag_shift() const {
  std::vector<Rat> s(b.size());
  for (size_t i = 0; i < b.size(); ++i) s[i] = b[i].im;
  return s;
}

std::vector<Rat> AffineTransform::apply_imag(const std::vector<Rat>& y) const {
  std::vector<Rat> r = matrix_apply(A, y);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i].im;
  return r;
}

MultiPoly substitute_affine(const MultiPoly& p, const AffineTransform& t) {
  t.validate();
  int n = p.nvars();
  if (t.dim() != n)
    throw Error(ErrorCode::Precondition, "transform dimension mismatch");
  std::vector<MultiPoly> repl;
  repl.reserve(n);
  for (int i = 0; i < n; ++i) {
    MultiPoly row = MultiPoly::constant(n, t.b[i]);
    for (int j = 0; j < n; ++j) {
      if (t.A[i][j] == 0) continue;
      row = row + MultiPoly::variable(n, j).scaled(RatC(t.A[i][j]));
    }
    repl.push_back(std::move(row));
  }
  return p.subst(repl).scaled(t.lambda);
}

}  // namespace improj
