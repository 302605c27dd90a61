#pragma once

#include "shtuka/matrix.hpp"
#include "shtuka/parabolic.hpp"
#include "shtuka/root_datum.hpp"

#include <optional>
#include <string>

namespace shtuka {

struct SigmaInvariants {
  RationalCoweight newton;
  std::int64_t kappa = 0;
};

// K_n, I_n, I, and the parts I_M, I_N, I_Nbar of I, optionally conjugated as
// x^l S x^{-l}.
struct SubgroupSpec {
  enum class Kind { K, I, IM, IN, INbar };
  Kind kind = Kind::I;
  std::int64_t level = 0;  // n for K_n and I_n
  std::optional<ParabolicSpec> parabolic;
  std::optional<AffineWeyl> conjugator;
  std::int64_t exponent = 0;

  static SubgroupSpec k(std::int64_t n) { return {Kind::K, n, std::nullopt, std::nullopt, 0}; }
  static SubgroupSpec iwahori(std::int64_t n = 0) { return {Kind::I, n, std::nullopt, std::nullopt, 0}; }
  static SubgroupSpec part(Kind kind, const ParabolicSpec& P) { return {kind, 0, P, std::nullopt, 0}; }
  SubgroupSpec conjugated(const AffineWeyl& x, std::int64_t l) const;

  // Precision of the conjugated-back element needed to decide membership.
  std::int64_t required_precision() const;
  std::string to_string() const;
};

bool subgroup_member(const Matrix& g, const SubgroupSpec& s);

// Valuation test that refuses to guess: throws PrecisionLoss when undecidable.
bool valuation_at_least(const Series& s, std::int64_t n);

Coweight hodge_point(const Matrix& g);
std::int64_t kottwitz(const Matrix& g);
RationalCoweight newton_point(const Matrix& g);
// hodge_point(g sigma(g) ... sigma^{s-1}(g)) / s
RationalCoweight newton_hodge_limit(const Matrix& g, std::int64_t s);
// (hodge_point(N_{2s}) - hodge_point(N_s)) / s; cancels the bounded defect of the plain quotient.
RationalCoweight newton_hodge_difference(const Matrix& g, std::int64_t s);
SigmaInvariants sigma_invariants(const Matrix& g);
bool mazur_check(const Matrix& g);

// g = left * x * right with left, right in I.
struct IwahoriCell {
  AffineWeyl x;
  Matrix left, right;
};
IwahoriCell iwahori_cell_decomposition(const Matrix& g);
AffineWeyl iwahori_cell(const Matrix& g);

struct IwahoriDecomposition {
  Matrix n, m, nbar;
};
// g = n m nbar, n in LN, m in LM, nbar in LNbar.
IwahoriDecomposition iwahori_decompose(const Matrix& g, const ParabolicSpec& P);
// g = nbar m n.
IwahoriDecomposition iwahori_decompose_opposite(const Matrix& g, const ParabolicSpec& P);
// Checked variant for g in the intersection K of the given subgroups, e.g. I cap x^l I x^{-l};
// every factor is verified to lie in K as well.
IwahoriDecomposition iwahori_decompose(const Matrix& g, const ParabolicSpec& P, const std::vector<SubgroupSpec>& K);

std::int64_t conjugation_bound(const Coweight& mu);

}  // namespace shtuka
