#pragma once

#include "shtuka/alcove.hpp"

#include <string>
#include <vector>

namespace shtuka {

struct SlopeDivisionResult {
  Matrix h, m, nbar;
  std::int64_t d = 0;
  std::int64_t iterations = 0;
  std::int64_t cap = 0;
  std::int64_t residual_valuation = 0;  // of h^{-1} g sigma(h) - x m nbar
};

// h^{-1} g sigma(h) = x m nbar mod z^d with h in I, m in I_M, nbar in I_Nbar.
SlopeDivisionResult slope_division(const Matrix& g, const AffineWeyl& x, const ParabolicSpec& P, std::int64_t d);

struct TrivializationResult {
  Matrix h;
  std::int64_t iterations = 0;
  std::int64_t l0 = 0;
  std::int64_t residual_valuation = 0;  // of h^{-1} x nbar sigma(h) - x
};

// h^{-1} x nbar sigma(h) = x mod z^d.
TrivializationResult trivialize_unipotent(const Matrix& nbar, const AffineWeyl& x, const ParabolicSpec& P,
                                          std::int64_t d);

struct BoundedExponent {
  std::int64_t l0 = 0;
  bool all_levels = false;  // nbar = 1 lies in every conjugate
};

// Largest l0 with nbar in x^{-l0} I_Nbar x^{l0}; these subgroups shrink as l0 grows.
BoundedExponent bounded_exponent(const Matrix& nbar, const AffineWeyl& x, const ParabolicSpec& P);

struct LocalShtukaData {
  Matrix A;  // phi = A sigma
  std::vector<int> blocks;
  std::vector<std::int64_t> slopes;  // t_1 > ... > t_e
  std::int64_t period = 1;           // s
};

struct CsdCondition {
  char condition = 'a';
  int index = 0;  // 1-based block index i
  bool ok = false;
  std::string detail;
};

struct CsdReport {
  bool ok = false;
  std::vector<CsdCondition> conditions;
  bool condition_ok(char c) const;
};

CsdReport csd_check_glr(const LocalShtukaData& D);
// z^{-mu} phi^s in Pbar(k[[z]]) for mu central in M and dominant.
CsdReport csd_check_zink(const Matrix& A, const ParabolicSpec& P, const Coweight& mu, std::int64_t s);

}  // namespace shtuka
