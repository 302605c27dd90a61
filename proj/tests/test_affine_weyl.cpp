#include "doctest.h"

#include "shtuka/affine_weyl.hpp"
#include "shtuka/errors.hpp"
#include "shtuka/root_datum.hpp"

#include <deque>
#include <map>
#include <random>

using namespace shtuka;

namespace {

AffineWeyl random_element(std::mt19937_64& rng, int n, int bound) {
  Perm w = identity_perm(n);
  std::shuffle(w.begin(), w.end(), rng);
  std::uniform_int_distribution<int> d(-bound, bound);
  Coweight t(n);
  for (auto& v : t) v = d(rng);
  return {w, t};
}

// Word length by 0-1 BFS: simple reflections cost 1, the rotation tau costs 0.
std::int64_t bfs_length(const AffineWeyl& target) {
  const int n = target.n();
  Perm rot(n);
  for (int i = 0; i < n; ++i) rot[i] = (i + n - 1) % n;
  Coweight rt(n, 0);
  rt[0] = 1;
  AffineWeyl tau(rot, rt);
  std::map<AffineWeyl, std::int64_t> dist;
  std::deque<AffineWeyl> q;
  dist[AffineWeyl::identity(n)] = 0;
  q.push_back(AffineWeyl::identity(n));
  while (!q.empty()) {
    AffineWeyl cur = q.front();
    q.pop_front();
    std::int64_t d = dist[cur];
    if (cur == target) return d;
    if (d > 8) continue;
    auto relax = [&](const AffineWeyl& nx, std::int64_t nd, bool front) {
      for (auto v : nx.t())
        if (std::abs(v) > 4) return;
      auto it = dist.find(nx);
      if (it != dist.end() && it->second <= nd) return;
      dist[nx] = nd;
      front ? q.push_front(nx) : q.push_back(nx);
    };
    relax(cur * tau, d, true);
    relax(cur * tau.inverse(), d, true);
    for (int i = 0; i < n; ++i) relax(cur * AffineWeyl::simple_reflection(n, i), d + 1, false);
  }
  return -1;
}

// Bruhat order through the lifting property.
bool bruhat_z(const AffineWeyl& y, const AffineWeyl& x) {
  const int n = x.n();
  std::int64_t lx = length(x);
  if (lx == 0) return y == x;
  for (int i = 0; i < n; ++i) {
    AffineWeyl s = AffineWeyl::simple_reflection(n, i);
    AffineWeyl sx = s * x;
    if (length(sx) < lx) {
      AffineWeyl sy = s * y;
      if (length(sy) < length(y)) return bruhat_z(sy, sx);
      return bruhat_z(y, sx);
    }
  }
  return false;
}

}  // namespace

TEST_CASE("perm cycles round trip") {
  Perm w = perm_from_cycles(5, {{1, 3}, {2, 5, 4}});
  CHECK(w == Perm{2, 4, 0, 1, 3});
  CHECK(perm_cycles_string(w) == "(1 3)(2 5 4)");
  CHECK(perm_cycles_string(identity_perm(3)) == "()");
  CHECK(perm_order(w) == 6);
  CHECK(perm_compose(w, perm_inverse(w)) == identity_perm(5));
  CHECK_THROWS_AS(perm_from_cycles(3, {{1, 2}, {2, 3}}), ParseError);
}

TEST_CASE("simple reflections are involutions of length one") {
  for (int n = 2; n <= 5; ++n)
    for (int i = 0; i < n; ++i) {
      AffineWeyl s = AffineWeyl::simple_reflection(n, i);
      CHECK(s * s == AffineWeyl::identity(n));
      CHECK(length(s) == 1);
    }
}

TEST_CASE("group laws") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + trial % 4;
    AffineWeyl a = random_element(rng, n, 3), b = random_element(rng, n, 3), c = random_element(rng, n, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * a.inverse() == AffineWeyl::identity(n));
    CHECK(a.pow(3) == a * a * a);
    CHECK(a.pow(-2) == (a * a).inverse());
    CHECK((a * b).kappa() == a.kappa() + b.kappa());
    CHECK(length(a) == length(a.inverse()));
    AffineRoot r{0, 1, 2};
    CHECK((a * b).act(r) == a.act(b.act(r)));
  }
}

TEST_CASE("length equals inversion count and word length") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + trial % 2;
    AffineWeyl x = random_element(rng, n, 1);
    std::int64_t l = length(x);
    CHECK(static_cast<std::int64_t>(inversion_set(x).size()) == l);
    for (const auto& a : inversion_set(x)) {
      CHECK(is_positive(a));
      CHECK_FALSE(is_positive(x.inverse().act(a)));
    }
    ReducedWord rw = reduced_word(x);
    CHECK(static_cast<std::int64_t>(rw.letters.size()) == l);
    CHECK(word_product(n, rw.letters, rw.tau) == x);
    CHECK(length(rw.tau) == 0);
    if (l <= 6) CHECK(bfs_length(x) == l);
  }
}

TEST_CASE("translation length") {
  // l(z^mu) = <mu_dom, 2 rho>
  CHECK(length(AffineWeyl::translation({1, 0, -1})) == 4);
  CHECK(length(AffineWeyl::translation({2, 0})) == 2);
  CHECK(length(AffineWeyl::translation({1, 1, 0, 0, 0})) == 6);
}

TEST_CASE("superbasic block sum") {
  AffineWeyl b({1, 0, 4, 2, 3}, {1, 0, 1, 0, 0});
  CHECK(length(b) == 3);
  AffineWeyl x(perm_from_cycles(5, {{1, 3}, {2, 5, 4}}), {1, 1, 0, 0, 0});
  CHECK(length(x) == 1);
  AffineWeyl s = AffineWeyl::finite(perm_from_cycles(5, {{2, 3}}));
  CHECK(s.inverse() * b * s == x);
  CHECK(x.to_string() == "w:(1 3)(2 5 4) t:[1,1,0,0,0]");
  RationalCoweight nu = newton_point_of_weyl(b);
  CHECK(nu == RationalCoweight{Rational(1, 2), Rational(1, 2), Rational(1, 3), Rational(1, 3), Rational(1, 3)});
}

TEST_CASE("bruhat order agrees with the lifting property") {
  std::mt19937_64 rng(5);
  int agree = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + trial % 2;
    AffineWeyl x = random_element(rng, n, 1);
    AffineWeyl y = random_element(rng, n, 1);
    if (x.kappa() != y.kappa()) continue;
    bool a = bruhat_leq(y, x), b = bruhat_z(y, x);
    CHECK(a == b);
    if (a) CHECK(length(y) <= length(x));
    ++agree;
  }
  CHECK(agree > 50);
  AffineWeyl x = AffineWeyl::translation({1, 0, -1});
  CHECK(bruhat_leq(AffineWeyl::identity(3), x));
  CHECK(bruhat_leq(x, x));
  CHECK_FALSE(bruhat_leq(x, AffineWeyl::identity(3)));
}
