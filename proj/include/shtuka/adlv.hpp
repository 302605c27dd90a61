#pragma once

#include "shtuka/loop_gln.hpp"

#include <optional>
#include <string>
#include <vector>

namespace shtuka {

enum class AdlvCriterion { ExactMu, LeqMu, IwahoriY };
enum class AdlvLevel { K0, I };

struct AdlvCondition {
  AdlvCriterion criterion = AdlvCriterion::ExactMu;
  Coweight mu;
  std::optional<AffineWeyl> y;
};

// g^{-1} b sigma(g) in K0 z^mu K0, in the union over mu' <= mu, or in I y I.
bool is_adlv_point(const Matrix& g, const Matrix& b, const AdlvCondition& c);

// I w K/K (or I w I/I) as the product of root subgroups U_a, a in roots, times w.
struct CellParametrization {
  AffineWeyl w;
  AdlvLevel level = AdlvLevel::K0;
  std::vector<AffineRoot> roots;

  static CellParametrization of(const AffineWeyl& w, AdlvLevel level);
  std::int64_t dimension() const { return static_cast<std::int64_t>(roots.size()); }
  Matrix representative(const FiniteField& F, const std::vector<Elem>& coords) const;
};

// Cells of length <= L with kappa = 0; minimal coset representatives for K0.
std::vector<CellParametrization> adlv_cells(int n, AdlvLevel level, std::int64_t L);

struct AdlvCellCount {
  AffineWeyl w;
  std::int64_t dimension = 0;
  std::vector<std::uint64_t> counts;      // per m
  std::vector<std::uint64_t> counts_leq;  // union over mu' <= mu (K0 criteria)
};

struct DimensionFit {
  double slope = 0;
  double intercept = 0;
  std::vector<double> residuals;
  bool valid = false;
};

struct AdlvReport {
  AdlvCondition condition;
  AdlvLevel level = AdlvLevel::K0;
  std::int64_t length_bound = 0;
  int p = 2, e = 1, ladder = 1;
  std::vector<AdlvCellCount> cells;
  std::vector<std::uint64_t> totals, totals_leq;
  DimensionFit fit, fit_leq;
  std::optional<Rational> formula;
  std::uint64_t points_tested = 0;
};

struct AdlvOptions {
  std::uint64_t budget = 1000000000ULL;
  bool force = false;
  unsigned threads = 0;  // 0 = hardware concurrency
  bool generic = false;  // skip the valuation kernel
};

// b must have prime-field coefficients; fields F_{q^m}, q = p^e, m = 1..ladder.
AdlvReport enumerate_and_count(const Matrix& b, const AdlvCondition& c, AdlvLevel level, std::int64_t L, int p, int e,
                               int ladder, const AdlvOptions& opt = {});

// Least squares fit of log_q(count_m) against m.
DimensionFit fit_dimension(const std::vector<std::uint64_t>& counts, double q);

std::int64_t rank_jb(const RationalCoweight& nu);
Rational dim_formula(const Coweight& mu, const RationalCoweight& nu);
std::int64_t dim_lower_bound_iwahori(const AffineWeyl& y, const RationalCoweight& nu, std::int64_t chain_len);

// Copy of b over F; every coefficient must lie in the prime field.
Matrix embed_prime_field(const Matrix& b, const FiniteField& F);

}  // namespace shtuka
