#include "doctest.h"

#include "shtuka/alcove.hpp"
#include "shtuka/errors.hpp"

using namespace shtuka;

namespace {

AffineWeyl example_b() { return AffineWeyl(perm_from_cycles(5, {{1, 2}, {3, 5, 4}}), {1, 0, 1, 0, 0}); }
AffineWeyl example_x() { return AffineWeyl(perm_from_cycles(5, {{1, 3}, {2, 5, 4}}), {1, 1, 0, 0, 0}); }
RationalCoweight example_nu() {
  return {Rational(1, 2), Rational(1, 2), Rational(1, 3), Rational(1, 3), Rational(1, 3)};
}

}  // namespace

TEST_CASE("example in GL5") {
  ParabolicSpec P({2, 3}, perm_from_cycles(5, {{2, 3}}));
  CHECK(is_p_fundamental(example_x(), P).ok());
  CHECK_FALSE(is_p_fundamental(example_b(), ParabolicSpec::standard({2, 3})).ok());
  CHECK_FALSE(is_p_fundamental(example_b(), ParabolicSpec::standard({3, 2})).ok());
  SigmaInvariants inv{example_nu(), 2};
  CHECK(verify_standard_representative(example_b(), inv));
  CHECK(standard_representative(inv) == example_b());
  auto certs = find_fundamental_alcoves(inv);
  REQUIRE(certs.size() == 1);
  CHECK(certs[0].x == example_x());
  CHECK(certs[0].conjugator == perm_from_cycles(5, {{2, 3}}));
  CHECK(centralizer_levi(example_nu()).blocks() == std::vector<int>{2, 3});
  CHECK(length(example_x()) == 1);
}

TEST_CASE("simple fundamental alcoves") {
  CHECK(is_p_fundamental(AffineWeyl::translation({2, 1, 0}), ParabolicSpec::borel(3)).ok());
  CHECK_FALSE(is_p_fundamental(AffineWeyl::translation({0, 1, 2}), ParabolicSpec::borel(3)).ok());
  AffineWeyl sb({1, 0}, {1, 0});
  CHECK(is_p_fundamental(sb, ParabolicSpec::whole(2)).ok());
  SigmaInvariants inv{{Rational(1, 2), Rational(1, 2)}, 1};
  CHECK(standard_representative(inv) == sb);
  auto certs = find_fundamental_alcoves(inv);
  REQUIRE(certs.size() == 1);
  CHECK(certs[0].x == sb);
  auto tcerts = find_fundamental_alcoves({to_rational(Coweight{2, 0, -1}), 1});
  bool found = false;
  for (const auto& c : tcerts) found = found || c.x == AffineWeyl::translation({2, 0, -1});
  CHECK(found);
  CHECK_THROWS_AS(standard_representative({{Rational(1, 2), Rational(0)}, 0}), PreconditionError);
  CHECK(centralizer_levi(to_rational(Coweight{0, 0, 0})).blocks() == std::vector<int>{3});
  CHECK(centralizer_levi(to_rational(Coweight{2, 1, 0})).blocks() == std::vector<int>{1, 1, 1});
}

TEST_CASE("standard representative of the superbasic GL2 class is unique") {
  int count = 0;
  for (const Perm& w : all_perms(2))
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b) {
        AffineWeyl x(w, {a, b});
        if (length(x) == 0 && newton_vector(x) == RationalCoweight{Rational(1, 2), Rational(1, 2)}) {
          ++count;
          CHECK(x == AffineWeyl({1, 0}, {1, 0}));
        }
      }
  CHECK(count == 1);
}

TEST_CASE("certificate identities over a sweep") {
  for (int n : {2, 3}) {
    auto invs = enumerate_newton_points(n, 3, 2, 3);
    CHECK(!invs.empty());
    for (const auto& inv : invs) {
      CAPTURE(format_coweight(inv.newton));
      AffineWeyl xb = standard_representative(inv);
      CHECK(standard_representative({newton_point_of_weyl(xb), xb.kappa()}) == xb);
      auto certs = find_fundamental_alcoves(inv);
      CHECK(!certs.empty());
      for (const auto& c : certs) {
        CHECK(c.ok());
        CHECK(newton_point_of_weyl(c.x) == inv.newton);
        CHECK(c.x.kappa() == inv.kappa);
        CHECK(Rational(length(c.x)) == pair_two_rho(inv.newton));
        for (int k = 1; k <= 4; ++k) CHECK(length(c.x.pow(k)) == k * length(c.x));
        CHECK(is_p_fundamental(c.x, enlarge_to_centralizer(c.x, c.parabolic)).ok());
      }
    }
  }
}

TEST_CASE("contraction exponent matches matrix conjugation") {
  std::mt19937_64 rng(9);
  const FiniteField& F = FiniteField::get(2, 1, 2);
  ParabolicSpec P({2, 3}, perm_from_cycles(5, {{2, 3}}));
  AffineWeyl x = example_x();
  for (std::int64_t d = 0; d <= 4; ++d) {
    std::int64_t l = contraction_exponent(x, P, d, RootPart::N);
    std::int64_t lb = contraction_exponent(x, P, d, RootPart::Nbar);
    Matrix xl = power(Matrix::monomial(F, x), l);
    Matrix xlb = power(Matrix::monomial(F, x), lb);
    for (int trial = 0; trial < 5; ++trial) {
      Matrix u = random_part(F, P, SubgroupSpec::Kind::IN, rng, 3).truncate(16);
      CHECK(subgroup_member(xl * u * xl.inverse(), SubgroupSpec::iwahori(d)));
      Matrix v = random_part(F, P, SubgroupSpec::Kind::INbar, rng, 3).truncate(16);
      CHECK(subgroup_member(xlb.inverse() * v * xlb, SubgroupSpec::iwahori(d)));
    }
    if (l > 0) {
      Matrix prev = power(Matrix::monomial(F, x), l - 1);
      bool any_out = false;
      for (int trial = 0; trial < 20 && !any_out; ++trial) {
        Matrix u = random_part(F, P, SubgroupSpec::Kind::IN, rng, 3);
        any_out = !subgroup_member(prev * u * prev.inverse(), SubgroupSpec::iwahori(d));
      }
      CHECK(any_out);
    }
  }
}
