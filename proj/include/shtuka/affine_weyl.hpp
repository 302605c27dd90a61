#pragma once

#include "shtuka/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace shtuka {

using Perm = std::vector<int>;  // 0-based images, w[i] = w(i)

Perm identity_perm(int n);
Perm perm_compose(const Perm& a, const Perm& b);  // (a*b)(i) = a(b(i))
Perm perm_inverse(const Perm& w);
int perm_length(const Perm& w);
// 1-based cycles, e.g. {{1,3},{2,5,4}}.
Perm perm_from_cycles(int n, const std::vector<std::vector<int>>& cycles);
std::string perm_cycles_string(const Perm& w);  // "(1 3)(2 5 4)", "()" for identity
std::int64_t perm_order(const Perm& w);
std::vector<Perm> all_perms(int n);

// (w v)_{w(i)} = v_i
template <class T>
std::vector<T> permute(const Perm& w, const std::vector<T>& v) {
  std::vector<T> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[w[i]] = v[i];
  return out;
}

// Affine root (e_i - e_j, k); it labels the matrix entry (i, j) at z^k.
struct AffineRoot {
  int i = 0, j = 0;
  std::int64_t k = 0;
  bool operator==(const AffineRoot& o) const { return i == o.i && j == o.j && k == o.k; }
};

// Positive iff it lies in the Iwahori with upper triangular reduction.
bool is_positive(const AffineRoot& a);
// Minimal level of a positive affine root over the finite root e_i - e_j.
inline std::int64_t min_positive_level(int i, int j) { return i < j ? 0 : 1; }

// Element of the extended affine Weyl group, realised as the monomial matrix
// P_w z^t with P_w e_i = e_{w(i)}.
class AffineWeyl {
 public:
  AffineWeyl() = default;
  AffineWeyl(Perm w, Coweight t);

  static AffineWeyl identity(int n);
  static AffineWeyl translation(const Coweight& lambda);
  static AffineWeyl finite(const Perm& w);
  // s_1..s_{n-1} finite, s_0 the affine reflection in (-theta, 1).
  static AffineWeyl simple_reflection(int n, int i);

  int n() const { return static_cast<int>(w_.size()); }
  const Perm& w() const { return w_; }
  const Coweight& t() const { return t_; }
  // lambda with x = z^lambda P_w.
  Coweight translation_left() const { return permute(w_, t_); }
  std::int64_t kappa() const;
  bool is_translation() const;

  AffineWeyl operator*(const AffineWeyl& o) const;
  AffineWeyl inverse() const;
  AffineWeyl pow(std::int64_t e) const;
  bool operator==(const AffineWeyl& o) const { return w_ == o.w_ && t_ == o.t_; }
  bool operator!=(const AffineWeyl& o) const { return !(*this == o); }
  bool operator<(const AffineWeyl& o) const { return std::tie(w_, t_) < std::tie(o.w_, o.t_); }

  // Conjugation action on affine roots: x U_a x^{-1} = U_{x.a}.
  AffineRoot act(const AffineRoot& a) const;

  std::size_t hash() const;
  std::string to_string() const;  // literal "w:(1 3)(2 5 4) t:[1,1,0,0,0]"

 private:
  Perm w_;
  Coweight t_;
};

struct AffineWeylHash {
  std::size_t operator()(const AffineWeyl& x) const { return x.hash(); }
};

std::int64_t length(const AffineWeyl& x);
// Length counted only over finite roots (i, j) with mask[i][j] set.
std::int64_t length_on(const AffineWeyl& x, const std::vector<std::vector<bool>>& mask);

// Inversion set {a > 0 : x^{-1}.a < 0}; its size is the length.
std::vector<AffineRoot> inversion_set(const AffineWeyl& x);

struct ReducedWord {
  std::vector<int> letters;  // x = s_{letters[0]} ... s_{letters.back()} tau
  AffineWeyl tau;
};
ReducedWord reduced_word(const AffineWeyl& x);
AffineWeyl word_product(int n, const std::vector<int>& letters, const AffineWeyl& tau);

bool bruhat_leq(const AffineWeyl& y, const AffineWeyl& x);

// lambda / t where x^t = z^lambda, before taking the dominant representative.
RationalCoweight newton_vector(const AffineWeyl& x);
RationalCoweight newton_point_of_weyl(const AffineWeyl& x);

}  // namespace shtuka
