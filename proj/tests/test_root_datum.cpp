#include "doctest.h"

#include "shtuka/errors.hpp"
#include "shtuka/root_datum.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <functional>
#include <set>

using namespace shtuka;

namespace {

using Polygon = std::vector<Rational>;  // values at 0..n

Polygon polygon_of(const RationalCoweight& nu) {
  Polygon p{Rational(0)};
  for (const auto& v : nu) p.push_back(p.back() + v);
  return p;
}

// Upper concave hull of integer points (k, P_k), evaluated at 0..n.
Polygon hull(const std::vector<std::int64_t>& pts) {
  const int n = static_cast<int>(pts.size()) - 1;
  Polygon h(n + 1);
  for (int k = 0; k <= n; ++k) {
    Rational best = pts[k];
    for (int a = 0; a <= k; ++a)
      for (int b = k; b <= n; ++b) {
        if (a == b) continue;
        Rational v = Rational(pts[a]) + Rational(pts[b] - pts[a]) * Rational(k - a, b - a);
        best = std::max(best, v);
      }
    h[k] = best;
  }
  return h;
}

bool leq(const Polygon& a, const Polygon& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

// Longest chain among GL_n Newton polygons with integral breaks between nu and mu.
std::int64_t chain_oracle(const Coweight& mu, const RationalCoweight& nu) {
  Polygon lo = polygon_of(nu), hi = polygon_of(to_rational(mu));
  const int n = static_cast<int>(mu.size());
  std::set<Polygon> polys;
  std::vector<std::int64_t> pts(n + 1);
  pts[0] = 0;
  pts[n] = static_cast<std::int64_t>(hi[n]);
  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      Polygon h = hull(pts);
      if (leq(lo, h) && leq(h, hi)) polys.insert(h);
      return;
    }
    std::int64_t a = static_cast<std::int64_t>(floor_rat(lo[k])), b = static_cast<std::int64_t>(floor_rat(hi[k]));
    for (std::int64_t v = a; v <= b; ++v) {
      pts[k] = v;
      rec(k + 1);
    }
  };
  rec(1);
  std::vector<Polygon> order(polys.begin(), polys.end());
  std::sort(order.begin(), order.end(), [](const Polygon& a, const Polygon& b) {
    Rational sa = 0, sb = 0;
    for (auto& v : a) sa += v;
    for (auto& v : b) sb += v;
    return sa < sb;
  });
  std::map<Polygon, std::int64_t> best;
  for (const auto& p : order) {
    std::int64_t b = 0;
    for (const auto& [q, d] : best)
      if (q != p && leq(q, p)) b = std::max(b, d + 1);
    best[p] = b;
  }
  return best.at(hi);
}

RootDatum g2() { return RootDatum(2, {{1, 0}, {0, 1}}, {{2, -1}, {-3, 2}}); }

}  // namespace

TEST_CASE("positive root counts") {
  CHECK(RootDatum::gl(4).positive_roots().size() == 6);
  CHECK(RootDatum(2, {{1, 0}, {0, 1}}, {{2, -1}, {-1, 2}}).positive_roots().size() == 3);
  CHECK(RootDatum(2, {{1, 0}, {0, 1}}, {{2, -1}, {-2, 2}}).positive_roots().size() == 4);
  CHECK(g2().positive_roots().size() == 6);
  CHECK_THROWS_AS(RootDatum(1, {{1}}, {{1}}), PreconditionError);
}

TEST_CASE("rho pairing matches the GL formula") {
  RootDatum gl3 = RootDatum::gl(3);
  RationalCoweight mu{Rational(2), Rational(0), Rational(-1)};
  CHECK(gl3.pair_two_rho(mu) == 6);
  CHECK(pair_two_rho(mu) == 6);
  CHECK(gl3.pair_rho(mu) == 3);
  CHECK(pair_rho(mu) == 3);
}

TEST_CASE("dominance order") {
  CHECK(dominance_leq(Coweight{1, 1, 0}, Coweight{2, 0, 0}));
  CHECK_FALSE(dominance_leq(Coweight{2, 0, 0}, Coweight{1, 1, 0}));
  CHECK_FALSE(dominance_leq(Coweight{1, 0, 0}, Coweight{1, 1, 0}));
  RationalCoweight half{Rational(1, 2), Rational(1, 2)};
  CHECK(dominance_leq(half, to_rational(Coweight{1, 0})));
  RootDatum gl2 = RootDatum::gl(2);
  CHECK(dominance_leq(gl2, half, to_rational(Coweight{1, 0}), false));
  CHECK_FALSE(dominance_leq(gl2, half, to_rational(Coweight{1, 0}), true));
  CHECK(dominant_representative(Coweight{0, 2, 1}) == Coweight{2, 1, 0});
  RootDatum g = g2();
  RationalCoweight v{Rational(-1), Rational(1)};
  RationalCoweight d = dominant_representative(g, v);
  CHECK(g.is_dominant(d));
  CHECK(dominance_leq(g, v, d, true));
}

TEST_CASE("fundamental group") {
  RootDatum sl2(1, {{2}}, {{1}});
  RootDatum pgl2(1, {{1}}, {{2}});
  CHECK(kottwitz_class(sl2, {1}) == kottwitz_class(sl2, {0}));
  CHECK_FALSE(kottwitz_class(pgl2, {1}) == kottwitz_class(pgl2, {0}));
  CHECK(kottwitz_class(pgl2, {3}) == kottwitz_class(pgl2, {1}));
  RootDatum gl3 = RootDatum::gl(3);
  CHECK(kottwitz_class(gl3, {1, 0, 0}) == kottwitz_class(gl3, {0, 0, 1}));
  CHECK(kottwitz_class(Coweight{2, -1, 0}) == 1);
}

TEST_CASE("newton chain length against poset enumeration") {
  std::vector<std::pair<Coweight, RationalCoweight>> cases = {
      {{1, 0}, {Rational(1, 2), Rational(1, 2)}},
      {{1, 0}, {Rational(1), Rational(0)}},
      {{1, -1}, {Rational(0), Rational(0)}},
      {{2, 0, 0}, {Rational(2, 3), Rational(2, 3), Rational(2, 3)}},
      {{1, 1, 0, 0, 0}, {Rational(1, 2), Rational(1, 2), Rational(1, 3), Rational(1, 3), Rational(1, 3)}},
      {{2, 1, 0, 0}, {Rational(3, 4), Rational(3, 4), Rational(3, 4), Rational(3, 4)}},
      {{3, 0, 0, -1}, {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}},
      {{2, 2, 0, 0}, {Rational(1), Rational(1), Rational(1), Rational(1)}},
  };
  for (const auto& [mu, nu] : cases) {
    CAPTURE(format_coweight(mu));
    CAPTURE(format_coweight(nu));
    std::int64_t o = chain_oracle(mu, nu);
    CHECK(newton_chain_length(mu, nu) == o);
    CHECK(newton_chain_length(RootDatum::gl(static_cast<int>(mu.size())), mu, nu) == o);
  }
  CHECK_THROWS_AS(newton_chain_length(Coweight{1, 0}, RationalCoweight{Rational(2), Rational(-1)}),
                  PreconditionError);
}
