#include "shtuka/field.hpp"

#include "shtuka/errors.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace shtuka {

namespace {

using Poly = std::vector<int>;  // low degree first, over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int inv_mod(int a, int p) {
  int r = 1;
  for (int e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

Poly poly_mod(Poly a, const Poly& f, int p) {
  trim(a);
  const int df = static_cast<int>(f.size()) - 1;
  int lead_inv = inv_mod(f.back(), p);
  while (static_cast<int>(a.size()) - 1 >= df) {
    int shift = static_cast<int>(a.size()) - 1 - df;
    int c = a.back() * lead_inv % p;
    for (int i = 0; i <= df; ++i) a[shift + i] = ((a[shift + i] - c * f[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  trim(c);
  return c;
}

Poly poly_powmod(Poly base, std::uint64_t k, const Poly& f, int p) {
  Poly r{1};
  base = poly_mod(base, f, p);
  while (k) {
    if (k & 1) r = poly_mod(poly_mul(r, base, p), f, p);
    base = poly_mod(poly_mul(base, base, p), f, p);
    k >>= 1;
  }
  return r;
}

Poly poly_sub(Poly a, const Poly& b, int p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
  trim(a);
  return a;
}

Poly poly_gcd(Poly a, Poly b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool t_is_primitive(int p, const Poly& f) {
  std::uint64_t order = ipow(p, static_cast<int>(f.size()) - 1) - 1;
  for (auto r : prime_factors(order))
    if (poly_powmod({0, 1}, order / r, f, p) == Poly{1}) return false;
  return true;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

constexpr std::uint32_t kMaxFieldSize = 1u << 20;

}  // namespace

bool is_irreducible(int p, const std::vector<int>& f_in) {
  Poly f = f_in;
  for (auto& c : f) c = ((c % p) + p) % p;
  trim(f);
  const int d = static_cast<int>(f.size()) - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  Poly t{0, 1};
  Poly h = t;
  for (int i = 0; i < d; ++i) h = poly_powmod(h, p, f, p);
  if (h != poly_mod(t, f, p)) return false;
  for (auto r : prime_factors(d)) {
    Poly g = t;
    for (std::uint64_t i = 0; i < d / r; ++i) g = poly_powmod(g, p, f, p);
    Poly gg = poly_gcd(f, poly_sub(g, t, p), p);
    if (gg.size() != 1) return false;
  }
  return true;
}

const FiniteField& FiniteField::get(int p, int e, int m, const std::vector<int>& modulus) {
  static std::mutex mu;
  using Key = std::tuple<int, int, int, std::vector<int>>;
  static std::map<Key, std::unique_ptr<FiniteField>> cache;
  static std::map<Key, const FiniteField*> requested;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(p, e, m, modulus);
  if (auto it = requested.find(key); it != requested.end()) return *it->second;
  if (!is_prime(p)) throw PreconditionError("field characteristic must be prime");
  if (e < 1 || m < 1) throw PreconditionError("field exponents must be positive");
  const int d = e * m;
  if (ipow(p, d) > kMaxFieldSize) throw PreconditionError("field too large for table arithmetic");
  Poly f = modulus;
  if (f.empty()) {
    Poly first;
    std::uint64_t count = ipow(p, d);
    for (std::uint64_t idx = 0; idx < count && f.empty(); ++idx) {
      Poly cand(d + 1, 0);
      cand[d] = 1;
      for (int i = 0, v = static_cast<int>(idx); i < d; ++i, v /= p) cand[i] = v % p;
      if (!is_irreducible(p, cand)) continue;
      if (first.empty()) first = cand;
      if (t_is_primitive(p, cand)) f = cand;
    }
    if (f.empty()) f = first;
  } else {
    for (auto& c : f) c = ((c % p) + p) % p;
    trim(f);
    if (static_cast<int>(f.size()) - 1 != d) throw PreconditionError("modulus degree must equal e*m");
    if (!is_irreducible(p, f)) throw PreconditionError("modulus is not irreducible");
    int li = inv_mod(f.back(), p);
    for (auto& c : f) c = c * li % p;
  }
  auto canonical = std::make_tuple(p, e, m, f);
  auto it = cache.find(canonical);
  if (it == cache.end())
    it = cache.emplace(canonical, std::unique_ptr<FiniteField>(new FiniteField(p, e, m, f))).first;
  requested.emplace(key, it->second.get());
  return *it->second;
}

FiniteField::FiniteField(int p, int e, int m, std::vector<int> modulus)
    : p_(p), e_(e), m_(m), mod_(std::move(modulus)) {
  const int d = e * m;
  q_ = static_cast<std::uint32_t>(ipow(p, e));
  size_ = static_cast<std::uint32_t>(ipow(p, d));
  neg_.resize(size_);
  for (Elem a = 0; a < size_; ++a) {
    auto c = to_poly(a);
    for (auto& v : c) v = (p_ - v) % p_;
    neg_[a] = from_poly(c);
  }
  // Generator of the multiplicative group.
  std::uint64_t order = size_ - 1;
  auto factors = prime_factors(order);
  Elem gen = 0;
  for (Elem g = 1; g < size_ && gen == 0; ++g) {
    Poly gp = to_poly(g);
    bool ok = true;
    for (auto r : factors)
      if (poly_powmod(gp, order / r, mod_, p_) == Poly{1}) {
        ok = false;
        break;
      }
    if (ok) gen = g;
  }
  if (size_ == 2) gen = 1;
  exp_.resize(size_);
  log_.assign(size_, 0);
  Elem cur = 1;
  for (std::uint32_t k = 0; k + 1 < size_; ++k) {
    exp_[k] = cur;
    log_[cur] = k;
    cur = poly_mul_mod(cur, gen);
  }
  exp_[size_ - 1] = 1;
  frob_.resize(size_);
  frob_inv_.resize(size_);
  frob_[0] = 0;
  for (Elem a = 1; a < size_; ++a) frob_[a] = exp_[static_cast<std::uint64_t>(log_[a]) * q_ % (size_ - 1)];
  for (Elem a = 0; a < size_; ++a) frob_inv_[frob_[a]] = a;
}

Elem FiniteField::poly_mul_mod(Elem a, Elem b) const {
  Poly r = poly_mod(poly_mul(to_poly(a), to_poly(b), p_), mod_, p_);
  return from_poly(r);
}

Elem FiniteField::from_int(std::int64_t v) const {
  v %= p_;
  if (v < 0) v += p_;
  return static_cast<Elem>(v);
}

Elem FiniteField::from_poly(const std::vector<int>& coeffs) const {
  Poly c = coeffs;
  for (auto& v : c) v = ((v % p_) + p_) % p_;
  c = poly_mod(c, mod_, p_);
  Elem r = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) r = r * p_ + c[i];
  return r;
}

std::vector<int> FiniteField::to_poly(Elem a) const {
  Poly c;
  while (a) {
    c.push_back(static_cast<int>(a % p_));
    a /= p_;
  }
  return c;
}

Elem FiniteField::add_slow(Elem a, Elem b) const {
  Elem r = 0, scale = 1;
  while (a || b) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Elem FiniteField::neg(Elem a) const { return neg_[a]; }

Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw Singular("inverse of zero field element");
  return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
}

Elem FiniteField::pow(Elem a, std::int64_t k) const {
  if (a == 0) {
    if (k < 0) throw Singular("negative power of zero");
    return k == 0 ? 1 : 0;
  }
  std::int64_t o = size_ - 1;
  std::int64_t r = (static_cast<std::int64_t>(log_[a]) * (k % o)) % o;
  if (r < 0) r += o;
  return exp_[r];
}

Elem FiniteField::sigma_pow(Elem a, std::int64_t k) const {
  k %= m_;
  if (k < 0) k += m_;
  for (std::int64_t i = 0; i < k; ++i) a = frob_[a];
  return a;
}

Elem FiniteField::random(std::mt19937_64& rng) const {
  return static_cast<Elem>(std::uniform_int_distribution<std::uint32_t>(0, size_ - 1)(rng));
}

Elem FiniteField::random_nonzero(std::mt19937_64& rng) const {
  return static_cast<Elem>(std::uniform_int_distribution<std::uint32_t>(1, size_ - 1)(rng));
}

namespace {
std::string poly_string(const Poly& c, bool prime_field) {
  if (c.empty()) return "0";
  if (prime_field) return std::to_string(c[0]);
  std::string s;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(c[i]);
      continue;
    }
    if (c[i] != 1) s += std::to_string(c[i]) + "*";
    s += i == 1 ? "t" : "t^" + std::to_string(i);
  }
  return s;
}
}  // namespace

std::string FiniteField::to_string(Elem a) const { return poly_string(to_poly(a), degree() == 1); }

std::string FiniteField::spec_string() const {
  return "p=" + std::to_string(p_) + ",e=" + std::to_string(e_) + ",m=" + std::to_string(m_) +
         ",mod=" + poly_string(mod_, false);
}

}  // namespace shtuka
