#pragma once

#include "shtuka/loop_gln.hpp"

#include <string>
#include <vector>

namespace shtuka {

// Image of a minimal affine root generator under x (or x^{-1}).
struct RootWitness {
  AffineRoot root;
  AffineRoot image;
  bool inverse = false;
  bool ok = false;
};

struct FundamentalAlcoveCertificate {
  AffineWeyl x;
  ParabolicSpec parabolic;
  Perm conjugator;
  bool in_levi = false;      // x in W~_M
  bool fixes_im = false;     // x I_M x^{-1} = I_M
  bool contracts_n = false;  // x I_N x^{-1} in I_N
  bool contracts_nbar = false;  // x^{-1} I_Nbar x in I_Nbar
  std::vector<RootWitness> witnesses;
  bool ok() const { return in_levi && fixes_im && contracts_n && contracts_nbar; }
};

FundamentalAlcoveCertificate is_p_fundamental(const AffineWeyl& x, const ParabolicSpec& P);

// Levi of the centralizer of a dominant nu, as a standard parabolic.
ParabolicSpec centralizer_levi(const RationalCoweight& nu);
// P' = M'P with M' the centralizer of the Newton vector of x; blocks with equal slope merge.
ParabolicSpec enlarge_to_centralizer(const AffineWeyl& x, const ParabolicSpec& P);

AffineWeyl standard_representative(const SigmaInvariants& inv);
bool verify_standard_representative(const AffineWeyl& x, const SigmaInvariants& inv);

std::vector<FundamentalAlcoveCertificate> find_fundamental_alcoves(const SigmaInvariants& inv);

// Least l >= 0 with x^l I_N x^{-l} in I_d (part N) or x^{-l} I_Nbar x^l in I_d (part Nbar).
std::int64_t contraction_exponent(const AffineWeyl& x, const ParabolicSpec& P, std::int64_t d, RootPart part);

// Integral-break Newton points for GL_n: slopes a/h with h <= max_den, |slope| <= max_slope,
// |kappa| <= max_kappa; dominant order.
std::vector<SigmaInvariants> enumerate_newton_points(int n, int max_den, std::int64_t max_slope, std::int64_t max_kappa);

// Random element of I_M, I_N or I_Nbar as a polynomial matrix of degree < deg.
Matrix random_part(const FiniteField& F, const ParabolicSpec& P, SubgroupSpec::Kind kind, std::mt19937_64& rng,
                   std::int64_t deg);

}  // namespace shtuka
