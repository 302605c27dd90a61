#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace shtuka {

using Elem = std::uint32_t;  // base-p digits are the coefficients in t

// F_{q^m} = F_p[t]/(mod), q = p^e, with sigma = Frobenius x -> x^q.
class FiniteField {
 public:
  // Fields are interned; the reference stays valid for the program lifetime.
  // An empty modulus selects the first irreducible one, primitive if possible.
  static const FiniteField& get(int p, int e, int m, const std::vector<int>& modulus = {});
  static const FiniteField& prime(int p) { return get(p, 1, 1); }

  int p() const { return p_; }
  int e() const { return e_; }
  int m() const { return m_; }
  int degree() const { return e_ * m_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t size() const { return size_; }
  const std::vector<int>& modulus() const { return mod_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const;
  Elem from_poly(const std::vector<int>& coeffs) const;  // coefficients of t^0, t^1, ...
  std::vector<int> to_poly(Elem a) const;

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    return add_slow(a, b);
  }
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= size_ - 1) s -= size_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::int64_t k) const;
  Elem sigma(Elem a) const { return frob_[a]; }
  Elem sigma_inv(Elem a) const { return frob_inv_[a]; }
  Elem sigma_pow(Elem a, std::int64_t k) const;
  bool in_base_field(Elem a) const { return frob_[a] == a; }

  Elem random(std::mt19937_64& rng) const;
  Elem random_nonzero(std::mt19937_64& rng) const;

  std::string to_string(Elem a) const;  // "t^2+t+1", prime field as integer
  std::string spec_string() const;        // "p=2,e=1,m=2,mod=t^2+t+1"

 private:
  FiniteField(int p, int e, int m, std::vector<int> modulus);
  Elem add_slow(Elem a, Elem b) const;
  Elem poly_mul_mod(Elem a, Elem b) const;

  int p_, e_, m_;
  std::uint32_t q_, size_;
  std::vector<int> mod_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
  std::vector<Elem> frob_, frob_inv_, neg_;
};

bool is_irreducible(int p, const std::vector<int>& f);

}  // namespace shtuka
