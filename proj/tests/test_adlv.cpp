#include "doctest.h"

#include "shtuka/adlv.hpp"
#include "shtuka/alcove.hpp"
#include "shtuka/errors.hpp"

#include <random>
#include <set>

using namespace shtuka;

namespace {

const FiniteField& F2() { return FiniteField::prime(2); }

Series zk(std::int64_t k) { return Series::monomial(F2(), 1, k); }

Matrix diag_z1() { return Matrix::diagonal(F2(), {zk(1), zk(0)}); }

Matrix superbasic2() {
  Matrix b(F2(), 2, 2);
  b(0, 1) = zk(1);
  b(1, 0) = zk(0);
  return b;
}

AdlvCondition exact(Coweight mu) { return {AdlvCriterion::ExactMu, std::move(mu), std::nullopt}; }

}  // namespace

TEST_CASE("membership examples") {
  CHECK(is_adlv_point(Matrix::identity(F2(), 2), Matrix::monomial(F2(), AffineWeyl::translation({2, -1})),
                      exact({2, -1})));
  CHECK(is_adlv_point(Matrix::identity(F2(), 2), diag_z1(), exact({1, 0})));
  CHECK(is_adlv_point(Matrix::identity(F2(), 2), superbasic2(), exact({1, 0})));
  CHECK_FALSE(is_adlv_point(Matrix::identity(F2(), 2), superbasic2(), exact({2, -1})));
  CHECK(is_adlv_point(Matrix::identity(F2(), 2), superbasic2(), {AdlvCriterion::LeqMu, {2, -1}, std::nullopt}));
  AffineWeyl y({1, 0}, {0, 1});
  CHECK(is_adlv_point(Matrix::identity(F2(), 2), superbasic2(), {AdlvCriterion::IwahoriY, {}, y}));
}

TEST_CASE("membership is well defined on cosets") {
  std::mt19937_64 rng(3);
  const FiniteField& F = FiniteField::get(2, 1, 2);
  Matrix b = embed_prime_field(superbasic2(), F);
  for (const auto& cell : adlv_cells(2, AdlvLevel::K0, 3)) {
    std::vector<Elem> coords(cell.roots.size());
    for (auto& c : coords) c = F.random(rng);
    Matrix g = cell.representative(F, coords);
    for (auto mu : {Coweight{1, 0}, Coweight{2, -1}, Coweight{3, -2}}) {
      bool v = is_adlv_point(g, b, exact(mu));
      for (int k = 0; k < 50; ++k) CHECK(is_adlv_point(g * random_k0(F, 2, rng, 3), b, exact(mu)) == v);
    }
  }
  for (const auto& cell : adlv_cells(2, AdlvLevel::I, 3)) {
    std::vector<Elem> coords(cell.roots.size());
    for (auto& c : coords) c = F.random(rng);
    Matrix g = cell.representative(F, coords);
    AdlvCondition c{AdlvCriterion::IwahoriY, {}, iwahori_cell(sigma_conjugate(b, g))};
    for (int k = 0; k < 50; ++k) CHECK(is_adlv_point(g * random_iwahori(F, 2, rng, 3), b, c));
  }
}

TEST_CASE("cell parametrizations are bijective") {
  for (int n : {2, 3})
    for (AdlvLevel level : {AdlvLevel::K0, AdlvLevel::I}) {
      auto cells = adlv_cells(n, level, n == 2 ? 3 : 2);
      std::vector<Matrix> reps;
      for (const auto& cell : cells) {
        CHECK(cell.dimension() == length(cell.w));
        CHECK(cell.w.kappa() == 0);
        std::size_t r = cell.roots.size();
        std::uint64_t total = 1ULL << r;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
          std::vector<Elem> coords(r);
          for (std::size_t a = 0; a < r; ++a) coords[a] = (idx >> a) & 1;
          Matrix g = cell.representative(F2(), coords);
          if (level == AdlvLevel::I) CHECK(iwahori_cell(g) == cell.w);
          reps.push_back(g);
        }
      }
      for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
          Matrix d = reps[i].inverse() * reps[j];
          if (level == AdlvLevel::K0) CHECK(hodge_point(d) != Coweight(n, 0));
          else CHECK(iwahori_cell(d) != AffineWeyl::identity(n));
        }
    }
}

TEST_CASE("K0 cells of the affine Grassmannian of GL2") {
  auto cells = adlv_cells(2, AdlvLevel::K0, 4);
  REQUIRE(cells.size() == 5);
  for (std::size_t k = 0; k < cells.size(); ++k) CHECK(cells[k].dimension() == static_cast<std::int64_t>(k));
  CHECK(adlv_cells(2, AdlvLevel::I, 4).size() == 9);
}

TEST_CASE("valuation kernel agrees with generic membership") {
  AdlvOptions generic;
  generic.generic = true;
  Matrix b3(F2(), 3, 3);
  b3(0, 2) = zk(1);
  b3(1, 0) = zk(0);
  b3(2, 1) = zk(0);
  struct Run {
    Matrix b;
    Coweight mu;
    std::int64_t L;
  };
  std::vector<Run> runs = {{diag_z1(), {1, 0}, 3}, {superbasic2(), {2, -1}, 3},
                           {Matrix::identity(F2(), 2), {1, -1}, 3}, {b3, {1, 0, 0}, 2}, {b3, {2, 0, -1}, 2}};
  for (const auto& r : runs) {
    auto fast = enumerate_and_count(r.b, exact(r.mu), AdlvLevel::K0, r.L, 2, 1, 2);
    auto slow = enumerate_and_count(r.b, exact(r.mu), AdlvLevel::K0, r.L, 2, 1, 2, generic);
    REQUIRE(fast.cells.size() == slow.cells.size());
    for (std::size_t k = 0; k < fast.cells.size(); ++k) {
      CHECK(fast.cells[k].counts == slow.cells[k].counts);
      CHECK(fast.cells[k].counts_leq == slow.cells[k].counts_leq);
    }
  }
}

TEST_CASE("point counts") {
  auto base = enumerate_and_count(Matrix::monomial(F2(), AffineWeyl::translation({1, -1})), exact({1, -1}),
                                  AdlvLevel::K0, 0, 2, 1, 1);
  REQUIRE(base.cells.size() == 1);
  CHECK(base.cells[0].counts[0] == 1);

  auto one = enumerate_and_count(Matrix::identity(F2(), 2), exact({1, -1}), AdlvLevel::K0, 4, 2, 1, 3);
  auto zero = enumerate_and_count(Matrix::identity(F2(), 2), exact({0, 0}), AdlvLevel::K0, 4, 2, 1, 3);
  for (std::size_t k = 0; k < one.cells.size(); ++k)
    for (int m = 0; m < 3; ++m) {
      CHECK(one.cells[k].counts[m] <= one.cells[k].counts_leq[m]);
      CHECK(one.cells[k].counts_leq[m] == one.cells[k].counts[m] + zero.cells[k].counts[m]);
    }
  // X_0(1) is the set of rational points, one per cell
  for (const auto& c : zero.cells)
    for (int m = 0; m < 3; ++m) CHECK(c.counts[m] == (1ULL << c.dimension));

  // sigma-conjugation by an element of K0 over the prime field
  Matrix h(F2(), 2, 2);
  h(0, 0) = zk(0) + zk(1);
  h(0, 1) = zk(1);
  h(1, 0) = zk(0);
  h(1, 1) = zk(0);
  for (const Matrix& b : {diag_z1(), superbasic2()}) {
    Matrix bh = sigma_conjugate(b, h);
    auto r1 = enumerate_and_count(b, exact({1, 0}), AdlvLevel::K0, 4, 2, 1, 2);
    auto r2 = enumerate_and_count(bh, exact({1, 0}), AdlvLevel::K0, 4, 2, 1, 2);
    CHECK(r1.totals == r2.totals);
  }

  AdlvOptions small;
  small.budget = 100;
  CHECK_THROWS_AS(enumerate_and_count(Matrix::identity(F2(), 2), exact({1, -1}), AdlvLevel::K0, 4, 2, 1, 3, small),
                  BudgetExceeded);
  Matrix nonprime = Matrix::identity(FiniteField::get(2, 1, 2), 2);
  nonprime(0, 1) = Series::monomial(FiniteField::get(2, 1, 2), 2, 0);
  CHECK_THROWS_AS(enumerate_and_count(nonprime, exact({0, 0}), AdlvLevel::K0, 1, 2, 1, 1), PreconditionError);
}

TEST_CASE("dimension fit") {
  auto f = fit_dimension({4, 16, 64}, 4);
  CHECK(f.valid);
  CHECK(f.slope == doctest::Approx(1));
  CHECK(fit_dimension({1, 1, 1}, 2).slope == doctest::Approx(0));
  CHECK_FALSE(fit_dimension({0, 0, 5}, 2).valid);
}

TEST_CASE("rank and dimension formulas") {
  CHECK(rank_jb({Rational(1, 2), Rational(1, 2)}) == 1);
  CHECK(rank_jb(to_rational(Coweight{3, 1, 1})) == 3);
  CHECK(rank_jb({Rational(1, 2), Rational(1, 2), Rational(1, 3), Rational(1, 3), Rational(1, 3)}) == 2);
  CHECK_THROWS_AS(rank_jb({Rational(1, 2), Rational(0)}), PreconditionError);
  CHECK(dim_formula({1, 0}, {Rational(1, 2), Rational(1, 2)}) == 0);
  CHECK(dim_formula({1, -1}, to_rational(Coweight{0, 0})) == 1);
  CHECK(dim_formula({2, 0, -1}, to_rational(Coweight{2, 0, -1})) == 0);
  CHECK_THROWS_AS(dim_formula({1, 0}, to_rational(Coweight{0, 0})), PreconditionError);
  // rank_jb equals n on integral points and the value is a non-negative integer below mu
  for (const auto& inv : enumerate_newton_points(3, 3, 2, 2)) {
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= a; ++b) {
        std::int64_t c = inv.kappa - a - b;
        if (c > b || c < -2) continue;
        Coweight mu{a, b, c};
        if (!dominance_leq(inv.newton, to_rational(mu))) continue;
        Rational d = dim_formula(mu, inv.newton);
        CHECK(d >= 0);
        CHECK(denominator(d) == 1);
      }
    if (is_integral(inv.newton)) CHECK(rank_jb(inv.newton) == 3);
  }
  AffineWeyl sb({1, 0}, {1, 0});
  CHECK(dim_lower_bound_iwahori(sb, newton_point_of_weyl(sb), 0) == 0);
  AffineWeyl y = AffineWeyl::simple_reflection(2, 0) * AffineWeyl::simple_reflection(2, 1) *
                 AffineWeyl::simple_reflection(2, 0) * sb;
  REQUIRE(length(y) == 3);
  CHECK(dim_lower_bound_iwahori(y, {Rational(1, 2), Rational(1, 2)}, 1) == 3 - 0 - 1);
  CHECK(dim_lower_bound_iwahori(y, {Rational(1, 2), Rational(1, 2)}, length(y)) == 0);
}
