#pragma once

#include "shtuka/field.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shtuka {

inline constexpr std::int64_t kExact = INT64_MAX / 4;

// Working precision for inverses of exact non-monomial series; SHTUKA_PRECISION overrides.
std::int64_t default_precision();
void set_default_precision(std::int64_t n);

// Laurent series sum c_k z^k known for k < prec.  A default-constructed series
// is the exact zero with no field attached; arithmetic adopts the other operand's field.
class Series {
 public:
  Series() = default;
  explicit Series(const FiniteField* F, std::int64_t prec = kExact) : F_(F), prec_(prec) {}
  Series(const FiniteField* F, std::int64_t offset, std::vector<Elem> coeffs, std::int64_t prec = kExact);

  static Series zero(const FiniteField& F, std::int64_t prec = kExact) { return Series(&F, prec); }
  static Series constant(const FiniteField& F, Elem c) { return monomial(F, c, 0); }
  static Series one(const FiniteField& F) { return constant(F, 1); }
  static Series monomial(const FiniteField& F, Elem c, std::int64_t k);

  const FiniteField* field() const { return F_; }
  std::int64_t precision() const { return prec_; }
  bool is_exact() const { return prec_ >= kExact; }
  std::int64_t offset() const { return off_; }
  const std::vector<Elem>& coeffs() const { return c_; }

  // No nonzero coefficient below the precision.
  bool is_known_zero() const { return c_.empty(); }
  bool is_exact_zero() const { return c_.empty() && is_exact(); }
  std::optional<std::int64_t> valuation() const;
  // True valuation if known, else the precision.
  std::int64_t valuation_bound() const { return c_.empty() ? prec_ : off_; }
  Elem coeff(std::int64_t k) const;  // throws PrecisionLoss at or beyond the precision
  Elem leading() const;

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator-() const;
  Series operator*(const Series& o) const;
  Series scale(Elem c) const;
  Series shift(std::int64_t k) const;  // times z^k
  Series truncate(std::int64_t prec) const;
  Series inverse() const;
  Series sigma() const;
  Series sigma_inv() const;
  Series sigma_pow(std::int64_t k) const;

  // Same precision window and coefficients.
  bool operator==(const Series& o) const;
  // Difference is zero as far as both are known.
  bool agrees_with(const Series& o) const { return (*this - o).is_known_zero(); }

  std::string to_string() const;

 private:
  void normalize();
  const FiniteField* field_with(const Series& o) const;

  const FiniteField* F_ = nullptr;
  std::int64_t off_ = 0;
  std::vector<Elem> c_;
  std::int64_t prec_ = kExact;
};

}  // namespace shtuka
