#pragma once

#include "shtuka/rational.hpp"

#include <cstdint>
#include <vector>

namespace shtuka {

using IntVec = std::vector<std::int64_t>;
using IntMat = std::vector<IntVec>;

// Split root datum given by simple roots (in X^*) and simple coroots (in X_*),
// both lattices identified with Z^rank.
class RootDatum {
 public:
  RootDatum(int rank, IntMat simple_roots, IntMat simple_coroots);

  static RootDatum gl(int n);

  int rank() const { return rank_; }
  int semisimple_rank() const { return static_cast<int>(simple_roots_.size()); }
  const IntMat& simple_roots() const { return simple_roots_; }
  const IntMat& simple_coroots() const { return simple_coroots_; }
  const IntMat& positive_roots() const { return positive_roots_; }
  const IntMat& cartan() const { return cartan_; }

  // 2*rho as an integer character.
  const IntVec& two_rho() const { return two_rho_; }

  // <2rho, mu> and <rho, mu>.
  Rational pair_rho(const RationalCoweight& mu) const;
  Rational pair_two_rho(const RationalCoweight& mu) const;

  bool is_dominant(const RationalCoweight& mu) const;

  // Coordinates of v in the simple coroot basis; throws if v is not in their span.
  std::vector<Rational> coroot_coordinates(const RationalCoweight& v) const;

  // Fundamental-weight functionals <omega_i, v>, defined on the coroot span.
  std::vector<Rational> fundamental_pairings(const RationalCoweight& v) const;

  // Canonical representative of v modulo the coroot lattice.
  IntVec pi1_reduce(const IntVec& v) const;

  bool is_gl() const { return gl_; }

 private:
  int rank_;
  IntMat simple_roots_;
  IntMat simple_coroots_;
  IntMat positive_roots_;
  IntMat cartan_;
  IntVec two_rho_;
  IntMat coroot_hnf_;
  std::vector<int> hnf_pivots_;
  bool gl_ = false;
};

// pi_1(G) class of a coweight.  For GL_n the value is the coordinate sum.
struct Pi1Class {
  IntVec value;
  bool operator==(const Pi1Class& o) const { return value == o.value; }
};

Rational pairing(const IntVec& chi, const RationalCoweight& mu);

// Dominance order mu1 <= mu2.  The integral variant additionally demands
// integral coroot coefficients.
bool dominance_leq(const RootDatum& rd, const RationalCoweight& mu1,
                   const RationalCoweight& mu2, bool integral);
bool dominance_leq(const Coweight& mu1, const Coweight& mu2);
bool dominance_leq(const RationalCoweight& mu1, const RationalCoweight& mu2);

RationalCoweight dominant_representative(const RootDatum& rd, RationalCoweight mu);
Coweight dominant_representative(Coweight mu);
RationalCoweight dominant_representative(RationalCoweight mu);
bool is_dominant(const RationalCoweight& mu);
bool is_dominant(const Coweight& mu);

Pi1Class kottwitz_class(const RootDatum& rd, const Coweight& mu);
std::int64_t kottwitz_class(const Coweight& mu);
Rational coordinate_sum(const RationalCoweight& nu);

// Partial sums of v in standard coordinates: <omega_i, v> for GL_n, i = 1..n-1.
std::vector<Rational> partial_sums(const RationalCoweight& v);

std::int64_t newton_chain_length(const RootDatum& rd, const Coweight& mu,
                                 const RationalCoweight& nu);
std::int64_t newton_chain_length(const Coweight& mu, const RationalCoweight& nu);

Rational pair_rho(const RationalCoweight& mu);      // GL_n
Rational pair_two_rho(const RationalCoweight& mu);  // GL_n

}  // namespace shtuka
