#include "shtuka/root_datum.hpp"

#include "shtuka/errors.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

namespace shtuka {

namespace {

std::int64_t ipair(const IntVec& a, const IntVec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Solve sum_j c_j cols[j] = v exactly; nullopt if v is outside the span.
std::optional<std::vector<Rational>> solve_span(const IntMat& cols, const RationalCoweight& v) {
  const std::size_t rows = v.size(), k = cols.size();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(k + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < k; ++j) a[r][j] = cols[j][r];
    a[r][k] = v[r];
  }
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < k && row < rows; ++c) {
    std::size_t p = row;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[row]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[row][c];
      for (std::size_t j = c; j <= k; ++j) a[r][j] -= f * a[row][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r)
    if (a[r][k] != 0) return std::nullopt;
  std::vector<Rational> c(k);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) c[pivot_col[r]] = a[r][k] / a[r][pivot_col[r]];
  return c;
}

}  // namespace

RootDatum::RootDatum(int rank, IntMat simple_roots, IntMat simple_coroots)
    : rank_(rank), simple_roots_(std::move(simple_roots)), simple_coroots_(std::move(simple_coroots)) {
  const std::size_t s = simple_roots_.size();
  if (simple_coroots_.size() != s) throw DimensionMismatch("root/coroot count mismatch");
  for (const auto& v : simple_roots_)
    if (static_cast<int>(v.size()) != rank_) throw DimensionMismatch("root length");
  for (const auto& v : simple_coroots_)
    if (static_cast<int>(v.size()) != rank_) throw DimensionMismatch("coroot length");

  cartan_.assign(s, IntVec(s));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) cartan_[i][j] = ipair(simple_roots_[i], simple_coroots_[j]);
  for (std::size_t i = 0; i < s; ++i) {
    if (cartan_[i][i] != 2) throw PreconditionError("Cartan diagonal must be 2");
    for (std::size_t j = 0; j < s; ++j) {
      if (i == j) continue;
      if (cartan_[i][j] > 0) throw PreconditionError("Cartan off-diagonal must be <= 0");
      if ((cartan_[i][j] == 0) != (cartan_[j][i] == 0))
        throw PreconditionError("Cartan zero pattern must be symmetric");
    }
  }

  // Weyl orbit of the simple roots.
  std::set<IntVec> roots(simple_roots_.begin(), simple_roots_.end());
  std::vector<IntVec> frontier(simple_roots_.begin(), simple_roots_.end());
  while (!frontier.empty()) {
    std::vector<IntVec> next;
    for (const auto& b : frontier)
      for (std::size_t i = 0; i < s; ++i) {
        std::int64_t c = ipair(b, simple_coroots_[i]);
        IntVec r = b;
        for (int k = 0; k < rank_; ++k) r[k] -= c * simple_roots_[i][k];
        if (roots.insert(r).second) next.push_back(r);
      }
    if (roots.size() > 10000) throw PreconditionError("root system is not finite");
    frontier.swap(next);
  }
  for (const auto& r : roots) {
    auto c = solve_span(simple_roots_, to_rational(r));
    if (!c) throw PreconditionError("simple roots do not span the root system");
    bool pos = std::all_of(c->begin(), c->end(), [](const Rational& x) { return x >= 0; });
    if (pos) positive_roots_.push_back(r);
  }
  two_rho_.assign(rank_, 0);
  for (const auto& r : positive_roots_)
    for (int k = 0; k < rank_; ++k) two_rho_[k] += r[k];
  for (std::size_t i = 0; i < s; ++i)
    if (ipair(two_rho_, simple_coroots_[i]) != 2) throw PreconditionError("<rho, alpha_i^vee> != 1");

  // Hermite normal form of the coroot lattice (rows).
  IntMat h = simple_coroots_;
  std::size_t row = 0;
  for (int c = 0; c < rank_ && row < h.size(); ++c) {
    for (;;) {
      std::size_t best = h.size();
      for (std::size_t r = row; r < h.size(); ++r)
        if (h[r][c] != 0 && (best == h.size() || std::llabs(h[r][c]) < std::llabs(h[best][c]))) best = r;
      if (best == h.size()) break;
      std::swap(h[row], h[best]);
      bool done = true;
      for (std::size_t r = row + 1; r < h.size(); ++r) {
        if (h[r][c] == 0) continue;
        std::int64_t q = h[r][c] / h[row][c];
        for (int k = 0; k < rank_; ++k) h[r][k] -= q * h[row][k];
        if (h[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (row < h.size() && h[row][c] != 0) {
      if (h[row][c] < 0)
        for (auto& x : h[row]) x = -x;
      for (std::size_t r = 0; r < row; ++r) {
        std::int64_t q = h[r][c] / h[row][c];
        if (h[r][c] - q * h[row][c] < 0) --q;
        for (int k = 0; k < rank_; ++k) h[r][k] -= q * h[row][k];
      }
      hnf_pivots_.push_back(c);
      ++row;
    }
  }
  h.resize(row);
  coroot_hnf_ = h;
}

RootDatum RootDatum::gl(int n) {
  if (n < 1) throw PreconditionError("GL_n needs n >= 1");
  IntMat roots, coroots;
  for (int i = 0; i + 1 < n; ++i) {
    IntVec a(n, 0);
    a[i] = 1;
    a[i + 1] = -1;
    roots.push_back(a);
    coroots.push_back(a);
  }
  RootDatum rd(n, roots, coroots);
  rd.gl_ = true;
  return rd;
}

Rational pairing(const IntVec& chi, const RationalCoweight& mu) {
  if (chi.size() != mu.size()) throw DimensionMismatch("pairing dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < chi.size(); ++i) s += mu[i] * chi[i];
  return s;
}

Rational RootDatum::pair_two_rho(const RationalCoweight& mu) const { return pairing(two_rho_, mu); }
Rational RootDatum::pair_rho(const RationalCoweight& mu) const { return pair_two_rho(mu) / 2; }

bool RootDatum::is_dominant(const RationalCoweight& mu) const {
  for (const auto& a : simple_roots_)
    if (pairing(a, mu) < 0) return false;
  return true;
}

std::vector<Rational> RootDatum::coroot_coordinates(const RationalCoweight& v) const {
  if (static_cast<int>(v.size()) != rank_) throw DimensionMismatch("coweight dimension mismatch");
  auto c = solve_span(simple_coroots_, v);
  if (!c) throw PreconditionError("not in the span of the simple coroots");
  return *c;
}

std::vector<Rational> RootDatum::fundamental_pairings(const RationalCoweight& v) const {
  return coroot_coordinates(v);
}

IntVec RootDatum::pi1_reduce(const IntVec& v) const {
  if (static_cast<int>(v.size()) != rank_) throw DimensionMismatch("coweight dimension mismatch");
  IntVec r = v;
  for (std::size_t i = 0; i < coroot_hnf_.size(); ++i) {
    int c = hnf_pivots_[i];
    std::int64_t p = coroot_hnf_[i][c];
    std::int64_t q = r[c] / p;
    if (r[c] - q * p < 0) --q;
    for (int k = 0; k < rank_; ++k) r[k] -= q * coroot_hnf_[i][k];
  }
  return r;
}

bool dominance_leq(const RootDatum& rd, const RationalCoweight& mu1, const RationalCoweight& mu2,
                   bool integral) {
  if (mu1.size() != mu2.size() || static_cast<int>(mu1.size()) != rd.rank())
    throw DimensionMismatch("dominance_leq dimension mismatch");
  RationalCoweight d(mu1.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = mu2[i] - mu1[i];
  auto c = solve_span(rd.simple_coroots(), d);
  if (!c) return false;
  for (const auto& x : *c) {
    if (x < 0) return false;
    if (integral && denominator(x) != 1) return false;
  }
  return true;
}

std::vector<Rational> partial_sums(const RationalCoweight& v) {
  std::vector<Rational> out;
  Rational s = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    s += v[i];
    out.push_back(s);
  }
  return out;
}

Rational coordinate_sum(const RationalCoweight& nu) {
  Rational s = 0;
  for (const auto& x : nu) s += x;
  return s;
}

bool dominance_leq(const RationalCoweight& mu1, const RationalCoweight& mu2) {
  if (mu1.size() != mu2.size()) throw DimensionMismatch("dominance_leq dimension mismatch");
  RationalCoweight d(mu1.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = mu2[i] - mu1[i];
  if (coordinate_sum(d) != 0) return false;
  for (const auto& s : partial_sums(d))
    if (s < 0) return false;
  return true;
}

bool dominance_leq(const Coweight& mu1, const Coweight& mu2) {
  return dominance_leq(to_rational(mu1), to_rational(mu2));
}

RationalCoweight dominant_representative(const RootDatum& rd, RationalCoweight mu) {
  if (static_cast<int>(mu.size()) != rd.rank()) throw DimensionMismatch("coweight dimension mismatch");
  for (bool moved = true; moved;) {
    moved = false;
    for (int i = 0; i < rd.semisimple_rank(); ++i) {
      Rational c = pairing(rd.simple_roots()[i], mu);
      if (c < 0) {
        for (int k = 0; k < rd.rank(); ++k) mu[k] -= c * rd.simple_coroots()[i][k];
        moved = true;
      }
    }
  }
  return mu;
}

Coweight dominant_representative(Coweight mu) {
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return mu;
}

RationalCoweight dominant_representative(RationalCoweight mu) {
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return mu;
}

bool is_dominant(const RationalCoweight& mu) {
  for (std::size_t i = 0; i + 1 < mu.size(); ++i)
    if (mu[i] < mu[i + 1]) return false;
  return true;
}

bool is_dominant(const Coweight& mu) {
  for (std::size_t i = 0; i + 1 < mu.size(); ++i)
    if (mu[i] < mu[i + 1]) return false;
  return true;
}

Pi1Class kottwitz_class(const RootDatum& rd, const Coweight& mu) { return {rd.pi1_reduce(mu)}; }

std::int64_t kottwitz_class(const Coweight& mu) { return std::accumulate(mu.begin(), mu.end(), std::int64_t{0}); }

std::int64_t newton_chain_length(const RootDatum& rd, const Coweight& mu, const RationalCoweight& nu) {
  RationalCoweight m = to_rational(mu);
  if (!dominance_leq(rd, nu, m, false)) throw PreconditionError("newton_chain_length needs nu <= mu");
  RationalCoweight d(m.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = m[i] - nu[i];
  std::int64_t total = 0;
  for (const auto& c : rd.fundamental_pairings(d)) total += static_cast<std::int64_t>(numerator(ceil_div(c)));
  return total;
}

std::int64_t newton_chain_length(const Coweight& mu, const RationalCoweight& nu) {
  RationalCoweight m = to_rational(mu);
  if (m.size() != nu.size()) throw DimensionMismatch("newton_chain_length dimension mismatch");
  if (!dominance_leq(nu, m)) throw PreconditionError("newton_chain_length needs nu <= mu");
  RationalCoweight d(m.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = m[i] - nu[i];
  std::int64_t total = 0;
  for (const auto& s : partial_sums(d)) total += static_cast<std::int64_t>(numerator(ceil_div(s)));
  return total;
}

Rational pair_two_rho(const RationalCoweight& mu) {
  const int n = static_cast<int>(mu.size());
  Rational s = 0;
  for (int i = 0; i < n; ++i) s += mu[i] * (n - 1 - 2 * i);
  return s;
}

Rational pair_rho(const RationalCoweight& mu) { return pair_two_rho(mu) / 2; }

}  // namespace shtuka
