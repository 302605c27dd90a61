#include "doctest.h"

#include "shtuka/errors.hpp"
#include "shtuka/loop_gln.hpp"

#include <functional>
#include <random>

using namespace shtuka;

namespace {

const FiniteField& F2() { return FiniteField::prime(2); }
const FiniteField& F4() { return FiniteField::get(2, 1, 2); }

Series zp(const FiniteField& F, std::int64_t k) { return Series::monomial(F, 1, k); }

AffineWeyl example_b() { return AffineWeyl(perm_from_cycles(5, {{1, 2}, {3, 5, 4}}), {1, 0, 1, 0, 0}); }

// Elementary divisors from minimal valuations of k x k minors.
Coweight determinantal_divisors(const Matrix& g) {
  const int n = g.rows();
  std::vector<std::int64_t> d(n + 1, 0);
  for (int k = 1; k <= n; ++k) {
    std::int64_t best = kExact;
    std::vector<int> rows(k), cols(k);
    std::function<void(int, int, std::vector<int>&, std::vector<std::vector<int>>&)> subsets =
        [&](int start, int left, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
          if (left == 0) {
            out.push_back(cur);
            return;
          }
          for (int i = start; i <= n - left; ++i) {
            cur.push_back(i);
            subsets(i + 1, left - 1, cur, out);
            cur.pop_back();
          }
        };
    std::vector<std::vector<int>> all;
    std::vector<int> cur;
    subsets(0, k, cur, all);
    for (const auto& r : all)
      for (const auto& c : all) {
        Matrix sub(g.field(), k, k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) sub(i, j) = g(r[i], c[j]);
        Series det = sub.determinant();
        if (!det.is_known_zero()) best = std::min(best, det.offset());
      }
    d[k] = best;
  }
  Coweight e;
  for (int k = 1; k <= n; ++k) e.push_back(d[k] - d[k - 1]);
  return dominant_representative(e);
}

AffineWeyl random_weyl(std::mt19937_64& rng, int n, int bound) {
  Perm w = identity_perm(n);
  std::shuffle(w.begin(), w.end(), rng);
  Coweight t(n);
  std::uniform_int_distribution<int> d(-bound, bound);
  for (auto& v : t) v = d(rng);
  return {w, t};
}

// Random element of I_n as a polynomial matrix.
Matrix random_in(const FiniteField& F, int n, std::int64_t level, std::mt19937_64& rng, std::int64_t deg) {
  if (level == 0) return random_iwahori(F, n, rng, deg);
  Matrix u = Matrix::identity(F, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) u(i, j) = u(i, j) + random_series(F, rng, i > j ? level + 1 : level, level + deg);
  return u;
}

}  // namespace

TEST_CASE("hodge point examples") {
  const FiniteField& F = F2();
  CHECK(hodge_point(Matrix::monomial(F, AffineWeyl::translation({2, 1, 0}))) == Coweight{2, 1, 0});
  CHECK(hodge_point(Matrix::monomial(F, example_b())) == Coweight{1, 1, 0, 0, 0});
  std::mt19937_64 rng(1);
  CHECK(hodge_point(random_k0(F, 3, rng, 4)) == Coweight{0, 0, 0});
  CHECK(kottwitz(Matrix::monomial(F, example_b())) == 2);
  CHECK(kottwitz(Matrix::identity(F, 3)) == 0);
}

TEST_CASE("hodge point agrees with determinantal divisors") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    const FiniteField& F = trial % 2 ? F2() : F4();
    int n = 2 + trial % 3;
    Coweight mu(n);
    std::uniform_int_distribution<int> d(-1, 2);
    for (auto& v : mu) v = d(rng);
    Matrix g = random_k0(F, n, rng, 3) * Matrix::monomial(F, AffineWeyl::translation(mu)) * random_k0(F, n, rng, 3);
    Coweight h = hodge_point(g);
    CHECK(h == dominant_representative(mu));
    CHECK(h == determinantal_divisors(g));
    CHECK(kottwitz(g) == kottwitz_class(mu));
    // truncating keeps the answer while enough digits survive
    CHECK(hodge_point(g.truncate(12)) == h);
  }
  Matrix lost = Matrix::identity(F2(), 2).truncate(0);
  CHECK_THROWS_AS(hodge_point(lost), PrecisionLoss);
}

TEST_CASE("newton point examples") {
  const FiniteField& F = F2();
  RationalCoweight nu = newton_point(Matrix::monomial(F, example_b()));
  CHECK(nu == RationalCoweight{Rational(1, 2), Rational(1, 2), Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  Matrix b(F, 2, 2);
  b(0, 1) = zp(F, 1);
  b(1, 0) = zp(F, 0);
  CHECK(newton_point(b) == RationalCoweight{Rational(1, 2), Rational(1, 2)});
  CHECK(newton_point(Matrix::monomial(F, AffineWeyl::translation({0, 2, -1}))) ==
        to_rational(Coweight{2, 0, -1}));
}

TEST_CASE("newton point matches the Weyl path and is a sigma-conjugacy invariant") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 80; ++trial) {
    const FiniteField& F = trial % 2 ? F2() : F4();
    int n = 2 + trial % 3;
    AffineWeyl x = random_weyl(rng, n, 2);
    Matrix g = Matrix::monomial(F, x);
    CHECK(newton_point(g) == newton_point_of_weyl(x));
    Matrix h = random_k0(F, n, rng, 3);
    Matrix c = sigma_conjugate(g, h);
    CHECK(newton_point(c) == newton_point_of_weyl(x));
    CHECK(kottwitz(c) == x.kappa());
    CHECK(mazur_check(c));
  }
}

TEST_CASE("iwahori cell round trip") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const FiniteField& F = trial % 2 ? F2() : F4();
    int n = 2 + trial % 3;
    AffineWeyl x = random_weyl(rng, n, 2);
    Matrix g = random_iwahori(F, n, rng, 3) * Matrix::monomial(F, x) * random_iwahori(F, n, rng, 3);
    CHECK(iwahori_cell(g) == x);
    if (trial % 10 == 0) {
      IwahoriCell c = iwahori_cell_decomposition(g);
      CHECK(c.x == x);
      CHECK(subgroup_member(c.left, SubgroupSpec::iwahori()));
      CHECK(subgroup_member(c.right, SubgroupSpec::iwahori()));
      CHECK((c.left * Matrix::monomial(F, x) * c.right).agrees_with(g));
    }
  }
  CHECK(iwahori_cell(Matrix::identity(F2(), 3)) == AffineWeyl::identity(3));
}

TEST_CASE("subgroup membership") {
  const FiniteField& F = F2();
  Matrix d = Matrix::diagonal(F, {Series::one(F) + zp(F, 1), Series::one(F)});
  CHECK(subgroup_member(d, SubgroupSpec::k(1)));
  CHECK_FALSE(subgroup_member(d, SubgroupSpec::k(2)));
  CHECK(subgroup_member(Matrix::identity(F, 3), SubgroupSpec::iwahori(5)));
  Matrix low = Matrix::identity(F, 2);
  low(1, 0) = zp(F, 1);
  CHECK(subgroup_member(low, SubgroupSpec::iwahori()));
  CHECK(subgroup_member(low, SubgroupSpec::iwahori(0)));
  CHECK_FALSE(subgroup_member(low, SubgroupSpec::iwahori(1)));
  low(1, 0) = zp(F, 2);
  CHECK(subgroup_member(low, SubgroupSpec::iwahori(1)));
  Matrix up = Matrix::identity(F, 2);
  up(0, 1) = zp(F, 0);
  CHECK(subgroup_member(up, SubgroupSpec::iwahori()));
  CHECK_FALSE(subgroup_member(up.transpose(), SubgroupSpec::iwahori()));
  // conjugation moves levels: z^{(2,0)} raises the (1,2) entry by two powers
  AffineWeyl x = AffineWeyl::translation({1, 0});
  CHECK_FALSE(subgroup_member(up, SubgroupSpec::iwahori(2)));
  CHECK(subgroup_member(up, SubgroupSpec::iwahori(2).conjugated(x, -2)));
  CHECK_THROWS_AS(subgroup_member(Matrix::identity(F, 2).truncate(1), SubgroupSpec::k(3)), PrecisionLoss);
}

TEST_CASE("iwahori decomposition") {
  std::mt19937_64 rng(5);
  std::vector<ParabolicSpec> Ps = {ParabolicSpec::standard({2, 1}), ParabolicSpec::standard({1, 2}),
                                   ParabolicSpec({2, 1}, perm_from_cycles(3, {{1, 3}})),
                                   ParabolicSpec::standard({1, 1, 1})};
  for (int trial = 0; trial < 60; ++trial) {
    const FiniteField& F = F4();
    const ParabolicSpec& P = Ps[trial % Ps.size()];
    Matrix g = random_iwahori(F, 3, rng, 4);
    IwahoriDecomposition d = iwahori_decompose(g, P, {SubgroupSpec::iwahori()});
    CHECK((d.n * d.m * d.nbar).agrees_with(g));
    CHECK(subgroup_member(d.n, SubgroupSpec::part(SubgroupSpec::Kind::IN, P)));
    CHECK(subgroup_member(d.m, SubgroupSpec::part(SubgroupSpec::Kind::IM, P)));
    CHECK(subgroup_member(d.nbar, SubgroupSpec::part(SubgroupSpec::Kind::INbar, P)));
    IwahoriDecomposition again = iwahori_decompose(d.n * d.m * d.nbar, P);
    CHECK(again.n.agrees_with(d.n));
    CHECK(again.m.agrees_with(d.m));
    CHECK(again.nbar.agrees_with(d.nbar));
    IwahoriDecomposition o = iwahori_decompose_opposite(g, P);
    CHECK((o.nbar * o.m * o.n).agrees_with(g));
    CHECK(subgroup_member(o.n, SubgroupSpec::part(SubgroupSpec::Kind::IN, P)));
    CHECK(subgroup_member(o.nbar, SubgroupSpec::part(SubgroupSpec::Kind::INbar, P)));
    // block lower triangular input has trivial N-part
    Matrix ml = d.m * d.nbar;
    CHECK(iwahori_decompose(ml, P).n.agrees_with(Matrix::identity(F, 3)));
  }
  Matrix bad = Matrix::identity(F4(), 3);
  bad(2, 0) = Series::one(F4());
  CHECK_THROWS_AS(iwahori_decompose(bad, Ps[0], {SubgroupSpec::iwahori()}), NotInSubgroup);
}

TEST_CASE("conjugation bound") {
  CHECK(conjugation_bound({0, 0}) == 1);
  CHECK(conjugation_bound({1, 0}) == 2);
  CHECK(conjugation_bound({1, 1, 0, 0, 0}) == 2);
  std::mt19937_64 rng(6);
  const FiniteField& F = F2();
  for (Coweight mu : {Coweight{1, 0}, Coweight{2, 0, -1}, Coweight{1, 1, 0}}) {
    int n = static_cast<int>(mu.size());
    std::int64_t e = conjugation_bound(mu);
    for (int trial = 0; trial < 20; ++trial) {
      std::int64_t lvl = trial % 4;
      Matrix h = random_k0(F, n, rng, 2) * Matrix::monomial(F, AffineWeyl::translation(mu)) * random_k0(F, n, rng, 2);
      Matrix u = random_in(F, n, lvl + e, rng, 3);
      CHECK(subgroup_member(h * u * h.inverse(), SubgroupSpec::iwahori(lvl)));
    }
  }
}

TEST_CASE("Hodge points of sigma norms approach the Newton point") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const FiniteField& F = trial % 2 ? FiniteField::prime(2) : FiniteField::get(2, 1, 2);
    int n = 2 + (trial / 2) % 2;
    Coweight mu(n, 0);
    mu[0] = 2;
    Matrix g = random_k0(F, n, rng, 3) * Matrix::monomial(F, AffineWeyl::translation(mu)) * random_k0(F, n, rng, 3);
    std::int64_t s = (n == 2 ? 2 : 6) * F.m();
    CHECK(newton_hodge_difference(g, s) == newton_point(g));
  }
  AffineWeyl x({1, 0}, {1, 0});
  Matrix X = Matrix::monomial(FiniteField::prime(2), x);
  CHECK(newton_hodge_limit(X, 2) == RationalCoweight{Rational(1, 2), Rational(1, 2)});
}
