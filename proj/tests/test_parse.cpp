#include "doctest.h"

#include "shtuka/errors.hpp"
#include "shtuka/parse.hpp"

#include <random>

using namespace shtuka;

TEST_CASE("coweights and permutations") {
  CHECK(parse_coweight("[1, 0,-1]") == Coweight{1, 0, -1});
  CHECK(parse_coweight("[]").empty());
  CHECK(parse_rational_coweight("[1/2,1/2, 1/3,1/3,1/3]") ==
        RationalCoweight{Rational(1, 2), Rational(1, 2), Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  CHECK(parse_rational_coweight("[2/4,-1]") == RationalCoweight{Rational(1, 2), Rational(-1)});
  CHECK(parse_perm("(1 3)(2 5 4)", 5) == perm_from_cycles(5, {{1, 3}, {2, 5, 4}}));
  CHECK(parse_perm("[2,1,3]", 3) == Perm{1, 0, 2});
  CHECK(parse_perm("()", 2) == identity_perm(2));
  CHECK_THROWS_AS(parse_perm("[1,1]", 2), ParseError);
  CHECK_THROWS_AS(parse_perm("(1 4)", 3), ParseError);
  CHECK_THROWS_AS(parse_coweight("[1,x]"), ParseError);
  CHECK_THROWS_AS(parse_coweight("1,2"), ParseError);
  CHECK_THROWS_AS(parse_rational_coweight("[1/0]"), ParseError);
}

TEST_CASE("element literals round trip") {
  AffineWeyl x(perm_from_cycles(5, {{1, 3}, {2, 5, 4}}), {1, 1, 0, 0, 0});
  CHECK(parse_affine_weyl("w:(1 3)(2 5 4) t:[1,1,0,0,0]") == x);
  CHECK(parse_affine_weyl(x.to_string()) == x);
  CHECK(parse_affine_weyl("w:[2,1] t:[1,0]") == AffineWeyl({1, 0}, {1, 0}));
  for (const Perm& w : all_perms(3))
    for (int a = -2; a <= 2; ++a) {
      AffineWeyl y(w, {a, 0, -a + 1});
      CHECK(parse_affine_weyl(y.to_string()) == y);
    }
  CHECK_THROWS_AS(parse_affine_weyl("t:[1,0]"), ParseError);
}

TEST_CASE("field specs round trip") {
  const FiniteField& F = parse_field("p=2,e=1,m=2");
  CHECK(F.size() == 4);
  CHECK(&parse_field(F.spec_string()) == &F);
  CHECK(&parse_field("p=3") == &FiniteField::prime(3));
  const FiniteField& G = parse_field("p=2,e=1,m=3,mod=t^3+t^2+1");
  CHECK(G.modulus() == std::vector<int>{1, 0, 1, 1});
  CHECK_THROWS_AS(parse_field("p=2,m=2,mod=t^2+1"), ParseError);
  CHECK_THROWS_AS(parse_field("e=1"), ParseError);
  CHECK_THROWS_AS(parse_field("p=2,x=1"), ParseError);
}

TEST_CASE("series literals") {
  const FiniteField& F = FiniteField::get(2, 1, 2);
  Series s = parse_series("1 + (t+1)*z^2 + O(z^5)", F);
  CHECK(s.precision() == 5);
  CHECK(s.coeff(0) == 1);
  CHECK(s.coeff(2) == F.from_poly({1, 1}));
  CHECK(parse_series("z^-2 + z^-1", F).offset() == -2);
  CHECK(parse_series("z + z", F).is_exact_zero());
  CHECK(parse_series("t*z", F) == Series::monomial(F, F.from_poly({0, 1}), 1));
  const FiniteField& P = FiniteField::prime(5);
  CHECK(parse_series("-1 - 2*z", P) == Series::monomial(P, 4, 0) + Series::monomial(P, 3, 1));
  CHECK(parse_series("0", P).is_exact_zero());
  CHECK(parse_series("O(z^3)", P).precision() == 3);
  CHECK_THROWS_AS(parse_series("t", P), ParseError);
  CHECK_THROWS_AS(parse_series("1 +", P), ParseError);
  CHECK_THROWS_AS(parse_series("y", P), ParseError);
}

TEST_CASE("random series and matrices round trip") {
  std::mt19937_64 rng(9);
  for (const auto* F : {&FiniteField::prime(2), &FiniteField::prime(3), &FiniteField::get(2, 1, 2),
                        &FiniteField::get(3, 1, 2)}) {
    for (int trial = 0; trial < 50; ++trial) {
      Series s = random_series(*F, rng, static_cast<std::int64_t>(rng() % 5) - 2, 6);
      if (trial % 3 == 0) s = s.truncate(s.offset() + 3);
      Series back = parse_series(s.to_string(), *F);
      CHECK(back == s);
    }
    Matrix m = random_iwahori(*F, 3, rng, 3);
    CHECK(parse_matrix(m.to_string(), *F) == m);
  }
  const FiniteField& F = FiniteField::prime(2);
  Matrix b = parse_matrix("[[0,z],[1,0]]", F);
  CHECK(b == parse_matrix("[0, z; 1, 0]", F));
  CHECK(b(0, 1) == Series::monomial(F, 1, 1));
  CHECK_THROWS_AS(parse_matrix("[[0,z],[1]]", F), ParseError);
  CHECK_THROWS_AS(parse_matrix("0, z", F), ParseError);
}

TEST_CASE("parabolic literals") {
  ParabolicSpec P({2, 3}, perm_from_cycles(5, {{2, 3}}));
  CHECK(parse_parabolic(P.to_string(), 5) == P);
  CHECK(parse_parabolic("blocks=2,1", 3) == ParabolicSpec::standard({2, 1}));
  CHECK_THROWS_AS(parse_parabolic("blocks=2,2", 3), ParseError);
}
