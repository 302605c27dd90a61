#include "shtuka/matrix.hpp"

#include "shtuka/errors.hpp"

#include <algorithm>

namespace shtuka {

Matrix::Matrix(const FiniteField& F, int rows, int cols)
    : F_(&F), r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, Series(&F)) {}

Matrix Matrix::identity(const FiniteField& F, int n) {
  Matrix m(F, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Series::one(F);
  return m;
}

Matrix Matrix::monomial(const FiniteField& F, const AffineWeyl& x) {
  Matrix m(F, x.n(), x.n());
  for (int i = 0; i < x.n(); ++i) m(x.w()[i], i) = Series::monomial(F, 1, x.t()[i]);
  return m;
}

Matrix Matrix::diagonal(const FiniteField& F, const std::vector<Series>& d) {
  Matrix m(F, static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("matrix sum shape mismatch");
  Matrix m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("matrix difference shape mismatch");
  Matrix m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (c_ != o.r_) throw DimensionMismatch("matrix product shape mismatch");
  Matrix m(*F_, r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < o.c_; ++j) {
      Series s(F_);
      for (int k = 0; k < c_; ++k) {
        const Series& x = (*this)(i, k);
        const Series& y = o(k, j);
        if (x.is_exact_zero() || y.is_exact_zero()) continue;
        s = s + x * y;
      }
      m(i, j) = s;
    }
  return m;
}

Matrix Matrix::shift(std::int64_t k) const {
  Matrix m = *this;
  for (auto& s : m.a_) s = s.shift(k);
  return m;
}

Matrix Matrix::sigma() const {
  Matrix m = *this;
  for (auto& s : m.a_) s = s.sigma();
  return m;
}

Matrix Matrix::sigma_inv() const {
  Matrix m = *this;
  for (auto& s : m.a_) s = s.sigma_inv();
  return m;
}

Matrix Matrix::sigma_pow(std::int64_t k) const {
  Matrix m = *this;
  for (auto& s : m.a_) s = s.sigma_pow(k);
  return m;
}

Matrix Matrix::truncate(std::int64_t prec) const {
  Matrix m = *this;
  for (auto& s : m.a_) s = s.truncate(prec);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(*F_, c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
  Matrix m(*F_, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void Matrix::set_block(int r0, int c0, const Matrix& b) {
  for (int i = 0; i < b.r_; ++i)
    for (int j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix Matrix::permuted(const Perm& w) const {
  Matrix m(*F_, r_, c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m(i, j) = (*this)(w[i], w[j]);
  return m;
}

std::vector<Series> characteristic_polynomial(const Matrix& A) {
  const FiniteField& F = A.field();
  const int n = A.rows();
  std::vector<Series> vect{Series::one(F)};
  for (int k = 1; k <= n; ++k) {
    // A_k = [[A_{k-1}, S], [R, a]]
    Matrix Ak1 = A.block(0, 0, k - 1, k - 1);
    Matrix S = A.block(0, k - 1, k - 1, 1);
    Matrix R = A.block(k - 1, 0, 1, k - 1);
    std::vector<Series> c(k + 1, Series(&F));
    c[0] = Series::one(F);
    c[1] = -A(k - 1, k - 1);
    Matrix cur = S;
    for (int m = 2; m <= k; ++m) {
      c[m] = -(R * cur)(0, 0);
      if (m < k) cur = Ak1 * cur;
    }
    std::vector<Series> next(k + 1, Series(&F));
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j < k && j <= i; ++j) next[i] = next[i] + c[i - j] * vect[j];
    vect = std::move(next);
  }
  return vect;
}

Series Matrix::determinant() const {
  if (!square()) throw DimensionMismatch("determinant of a non-square matrix");
  if (r_ == 0) return Series::one(*F_);
  auto v = characteristic_polynomial(*this);
  return r_ % 2 == 0 ? v[r_] : -v[r_];
}

Matrix Matrix::inverse() const {
  if (!square()) throw DimensionMismatch("inverse of a non-square matrix");
  const int n = r_;
  Matrix a = *this;
  Matrix inv = identity(*F_, n);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    std::int64_t best = 0;
    bool indeterminate = false;
    for (int i = k; i < n; ++i) {
      const Series& s = a(i, k);
      if (s.is_known_zero()) {
        if (!s.is_exact()) indeterminate = true;
        continue;
      }
      if (piv < 0 || s.offset() < best) {
        piv = i;
        best = s.offset();
      }
    }
    if (piv < 0) {
      if (indeterminate) throw PrecisionLoss("pivot undetermined in matrix inverse");
      throw Singular("matrix is singular");
    }
    if (piv != k)
      for (int j = 0; j < n; ++j) {
        std::swap(a(k, j), a(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    Series pinv = a(k, k).inverse();
    for (int j = 0; j < n; ++j) {
      a(k, j) = a(k, j) * pinv;
      inv(k, j) = inv(k, j) * pinv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_exact_zero()) continue;
      Series f = a(i, k);
      for (int j = 0; j < n; ++j) {
        a(i, j) = a(i, j) - f * a(k, j);
        inv(i, j) = inv(i, j) - f * inv(k, j);
      }
    }
  }
  return inv;
}

std::int64_t Matrix::precision() const {
  std::int64_t p = kExact;
  for (const auto& s : a_) p = std::min(p, s.precision());
  return p;
}

std::int64_t Matrix::valuation_bound() const {
  std::int64_t v = kExact;
  for (const auto& s : a_) v = std::min(v, s.valuation_bound());
  return v;
}

bool Matrix::is_known_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Series& s) { return s.is_known_zero(); });
}

bool Matrix::operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

std::string Matrix::to_string() const {
  std::string s = "[";
  for (int i = 0; i < r_; ++i) {
    if (i) s += "; ";
    for (int j = 0; j < c_; ++j) {
      if (j) s += ", ";
      s += (*this)(i, j).to_string();
    }
  }
  return s + "]";
}

Matrix power(const Matrix& g, std::int64_t k) {
  if (k < 0) return power(g.inverse(), -k);
  Matrix r = Matrix::identity(g.field(), g.rows());
  Matrix b = g;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

Matrix sigma_norm(const Matrix& g, std::int64_t s) {
  Matrix r = Matrix::identity(g.field(), g.rows());
  Matrix cur = g;
  for (std::int64_t i = 0; i < s; ++i) {
    r = r * cur;
    cur = cur.sigma();
  }
  return r;
}

Matrix sigma_conjugate(const Matrix& g, const Matrix& h) { return h.inverse() * g * h.sigma(); }

Series random_series(const FiniteField& F, std::mt19937_64& rng, std::int64_t v, std::int64_t deg) {
  std::vector<Elem> c;
  for (std::int64_t k = v; k < deg; ++k) c.push_back(F.random(rng));
  return Series(&F, v, std::move(c));
}

Matrix random_iwahori(const FiniteField& F, int n, std::mt19937_64& rng, std::int64_t deg) {
  Matrix m(F, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        m(i, j) = Series::constant(F, F.random_nonzero(rng)) + random_series(F, rng, 1, deg);
      else
        m(i, j) = random_series(F, rng, i > j ? 1 : 0, deg);
    }
  return m;
}

Matrix random_k0(const FiniteField& F, int n, std::mt19937_64& rng, std::int64_t deg) {
  Perm w = identity_perm(n);
  std::shuffle(w.begin(), w.end(), rng);
  return random_iwahori(F, n, rng, deg) * Matrix::monomial(F, AffineWeyl::finite(w)) *
         random_iwahori(F, n, rng, deg);
}

}  // namespace shtuka
