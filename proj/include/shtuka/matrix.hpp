#pragma once

#include "shtuka/affine_weyl.hpp"
#include "shtuka/series.hpp"

#include <random>
#include <string>
#include <vector>

namespace shtuka {

class Matrix {
 public:
  Matrix() = default;
  Matrix(const FiniteField& F, int rows, int cols);

  static Matrix identity(const FiniteField& F, int n);
  static Matrix zero(const FiniteField& F, int n) { return Matrix(F, n, n); }
  // P_w z^t: entry (w(i), i) equals z^{t_i}.
  static Matrix monomial(const FiniteField& F, const AffineWeyl& x);
  static Matrix diagonal(const FiniteField& F, const std::vector<Series>& d);

  const FiniteField& field() const { return *F_; }
  const FiniteField* field_ptr() const { return F_; }
  int rows() const { return r_; }
  int cols() const { return c_; }
  bool square() const { return r_ == c_; }

  Series& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  const Series& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix shift(std::int64_t k) const;  // times z^k
  Matrix sigma() const;
  Matrix sigma_inv() const;
  Matrix sigma_pow(std::int64_t k) const;
  Matrix truncate(std::int64_t prec) const;
  Matrix transpose() const;

  Matrix block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Matrix& b);
  // P_w^{-1} g P_w for a finite permutation.
  Matrix permuted(const Perm& w) const;

  Series determinant() const;
  Matrix inverse() const;

  std::int64_t precision() const;
  // Minimum over entries of the valuation bound.
  std::int64_t valuation_bound() const;
  bool is_known_zero() const;
  bool agrees_with(const Matrix& o) const { return (*this - o).is_known_zero(); }
  bool operator==(const Matrix& o) const;

  std::string to_string() const;  // "[a, b; c, d]"

 private:
  const FiniteField* F_ = nullptr;
  int r_ = 0, c_ = 0;
  std::vector<Series> a_;
};

// Coefficients of det(lambda - A), leading coefficient first (division free).
std::vector<Series> characteristic_polynomial(const Matrix& A);

Matrix power(const Matrix& g, std::int64_t k);
// g sigma(g) ... sigma^{s-1}(g)
Matrix sigma_norm(const Matrix& g, std::int64_t s);
// h^{-1} g sigma(h)
Matrix sigma_conjugate(const Matrix& g, const Matrix& h);

// Random polynomial of degree < deg with valuation >= v.
Series random_series(const FiniteField& F, std::mt19937_64& rng, std::int64_t v, std::int64_t deg);
// Random element of the Iwahori subgroup I, principal entries units, polynomial of degree < deg.
Matrix random_iwahori(const FiniteField& F, int n, std::mt19937_64& rng, std::int64_t deg);
Matrix random_k0(const FiniteField& F, int n, std::mt19937_64& rng, std::int64_t deg);

}  // namespace shtuka
