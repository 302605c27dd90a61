#include "shtuka/affine_weyl.hpp"

#include "shtuka/errors.hpp"
#include "shtuka/root_datum.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_set>

namespace shtuka {

Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

Perm perm_inverse(const Perm& w) {
  Perm r(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) r[w[i]] = static_cast<int>(i);
  return r;
}

int perm_length(const Perm& w) {
  int c = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i] > w[j]) ++c;
  return c;
}

Perm perm_from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  Perm w = identity_perm(n);
  std::vector<bool> seen(n, false);
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      int a = c[k] - 1, b = c[(k + 1) % c.size()] - 1;
      if (a < 0 || a >= n || b < 0 || b >= n) throw ParseError("cycle entry out of range");
      if (seen[a]) throw ParseError("cycles are not disjoint");
      seen[a] = true;
      w[a] = b;
    }
  }
  return w;
}

std::string perm_cycles_string(const Perm& w) {
  std::string s;
  std::vector<bool> seen(w.size(), false);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (seen[i] || w[i] == static_cast<int>(i)) continue;
    s += "(";
    for (std::size_t j = i; !seen[j]; j = w[j]) {
      if (j != i) s += " ";
      s += std::to_string(j + 1);
      seen[j] = true;
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

std::int64_t perm_order(const Perm& w) {
  std::int64_t o = 1;
  std::vector<bool> seen(w.size(), false);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (seen[i]) continue;
    std::int64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = w[j]) {
      seen[j] = true;
      ++len;
    }
    o = std::lcm(o, len);
  }
  return o;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

bool is_positive(const AffineRoot& a) { return a.k >= 1 || (a.k == 0 && a.i < a.j); }

AffineWeyl::AffineWeyl(Perm w, Coweight t) : w_(std::move(w)), t_(std::move(t)) {
  if (w_.size() != t_.size()) throw DimensionMismatch("permutation and translation sizes differ");
  std::vector<bool> seen(w_.size(), false);
  for (int v : w_) {
    if (v < 0 || v >= static_cast<int>(w_.size()) || seen[v]) throw PreconditionError("not a permutation");
    seen[v] = true;
  }
}

AffineWeyl AffineWeyl::identity(int n) { return {identity_perm(n), Coweight(n, 0)}; }
AffineWeyl AffineWeyl::translation(const Coweight& lambda) {
  return {identity_perm(static_cast<int>(lambda.size())), lambda};
}
AffineWeyl AffineWeyl::finite(const Perm& w) { return {w, Coweight(w.size(), 0)}; }

AffineWeyl AffineWeyl::simple_reflection(int n, int i) {
  if (n < 2 || i < 0 || i >= n) throw PreconditionError("simple reflection index out of range");
  Perm w = identity_perm(n);
  Coweight t(n, 0);
  if (i == 0) {
    std::swap(w[0], w[n - 1]);
    t[0] = 1;
    t[n - 1] = -1;
  } else {
    std::swap(w[i - 1], w[i]);
  }
  return {w, t};
}

std::int64_t AffineWeyl::kappa() const { return std::accumulate(t_.begin(), t_.end(), std::int64_t{0}); }

bool AffineWeyl::is_translation() const { return w_ == identity_perm(n()); }

AffineWeyl AffineWeyl::operator*(const AffineWeyl& o) const {
  if (n() != o.n()) throw DimensionMismatch("affine Weyl rank mismatch");
  Coweight t(n());
  for (int i = 0; i < n(); ++i) t[i] = t_[o.w_[i]] + o.t_[i];
  return {perm_compose(w_, o.w_), t};
}

AffineWeyl AffineWeyl::inverse() const {
  Perm wi = perm_inverse(w_);
  Coweight t(n());
  for (int i = 0; i < n(); ++i) t[i] = -t_[wi[i]];
  return {wi, t};
}

AffineWeyl AffineWeyl::pow(std::int64_t e) const {
  AffineWeyl base = e < 0 ? inverse() : *this;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  AffineWeyl r = identity(n());
  while (k) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

AffineRoot AffineWeyl::act(const AffineRoot& a) const {
  return {w_[a.i], w_[a.j], a.k + t_[a.i] - t_[a.j]};
}

std::size_t AffineWeyl::hash() const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::int64_t v) { h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull; };
  for (int v : w_) mix(v);
  for (auto v : t_) mix(v);
  return h;
}

std::string AffineWeyl::to_string() const {
  return "w:" + perm_cycles_string(w_) + " t:" + format_coweight(t_);
}

std::int64_t length_on(const AffineWeyl& x, const std::vector<std::vector<bool>>& mask) {
  std::int64_t total = 0;
  const int n = x.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !mask[i][j]) continue;
      std::int64_t c = x.t()[i] - x.t()[j];
      std::int64_t cnt = min_positive_level(x.w()[i], x.w()[j]) - c - min_positive_level(i, j);
      if (cnt > 0) total += cnt;
    }
  return total;
}

std::int64_t length(const AffineWeyl& x) {
  std::vector<std::vector<bool>> all(x.n(), std::vector<bool>(x.n(), true));
  return length_on(x, all);
}

std::vector<AffineRoot> inversion_set(const AffineWeyl& x) {
  // a > 0 with x^{-1}.a < 0: equivalently a = x.b for b < 0 with x.b > 0.
  std::vector<AffineRoot> out;
  const int n = x.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      std::int64_t c = x.t()[i] - x.t()[j];
      // b = (i, j, k) negative: k < min level; image level k + c must be >= min level of image.
      std::int64_t lo = min_positive_level(x.w()[i], x.w()[j]) - c;
      std::int64_t hi = min_positive_level(i, j) - 1;
      for (std::int64_t k = lo; k <= hi; ++k) out.push_back(x.act({i, j, k}));
    }
  std::sort(out.begin(), out.end(), [](const AffineRoot& a, const AffineRoot& b) {
    return std::tie(a.k, a.i, a.j) < std::tie(b.k, b.i, b.j);
  });
  return out;
}

ReducedWord reduced_word(const AffineWeyl& x) {
  ReducedWord rw;
  AffineWeyl cur = x;
  const int n = x.n();
  std::int64_t len = length(cur);
  while (len > 0) {
    bool found = false;
    for (int i = 0; i < n && n >= 2; ++i) {
      AffineWeyl s = AffineWeyl::simple_reflection(n, i);
      AffineWeyl next = s * cur;
      std::int64_t l2 = length(next);
      if (l2 < len) {
        rw.letters.push_back(i);
        cur = next;
        len = l2;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("no descent found for an element of positive length");
  }
  rw.tau = cur;
  return rw;
}

AffineWeyl word_product(int n, const std::vector<int>& letters, const AffineWeyl& tau) {
  AffineWeyl r = AffineWeyl::identity(n);
  for (int i : letters) r = r * AffineWeyl::simple_reflection(n, i);
  return r * tau;
}

bool bruhat_leq(const AffineWeyl& y, const AffineWeyl& x) {
  if (y.n() != x.n()) throw DimensionMismatch("bruhat_leq rank mismatch");
  ReducedWord rx = reduced_word(x);
  ReducedWord ry = reduced_word(y);
  if (rx.tau != ry.tau) return false;
  if (ry.letters.size() > rx.letters.size()) return false;
  const int n = x.n();
  const std::size_t L = rx.letters.size();
  AffineWeyl target = y * rx.tau.inverse();
  std::vector<AffineWeyl> refl;
  for (int i = 0; i < n && n >= 2; ++i) refl.push_back(AffineWeyl::simple_reflection(n, i));
  std::vector<std::unordered_set<AffineWeyl, AffineWeylHash>> failed(L + 1);
  // Can t be written as a product of a subword of letters[k..L)?
  std::function<bool(std::size_t, const AffineWeyl&)> reach = [&](std::size_t k, const AffineWeyl& t) {
    std::int64_t lt = length(t);
    if (lt == 0) return t == AffineWeyl::identity(n);
    if (static_cast<std::size_t>(lt) > L - k) return false;
    if (failed[k].count(t)) return false;
    bool ok = reach(k + 1, t) || reach(k + 1, refl[rx.letters[k]] * t);
    if (!ok) failed[k].insert(t);
    return ok;
  };
  return reach(0, target);
}

RationalCoweight newton_vector(const AffineWeyl& x) {
  std::int64_t o = perm_order(x.w());
  AffineWeyl p = x.pow(o);
  RationalCoweight nu;
  for (auto v : p.t()) nu.emplace_back(Rational(v, o));
  return nu;
}

RationalCoweight newton_point_of_weyl(const AffineWeyl& x) { return dominant_representative(newton_vector(x)); }

}  // namespace shtuka
