#include "doctest.h"

#include "shtuka/errors.hpp"
#include "shtuka/field.hpp"

using namespace shtuka;

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(2, {1, 1, 1}));
  CHECK_FALSE(is_irreducible(2, {1, 0, 1}));
  CHECK(is_irreducible(2, {1, 1, 0, 1}));
  CHECK_FALSE(is_irreducible(2, {1, 1, 1, 1}));
  CHECK(is_irreducible(3, {1, 0, 1}));
  CHECK_FALSE(is_irreducible(3, {2, 0, 1}));
  CHECK_FALSE(is_irreducible(2, {0, 1, 1, 1, 1, 1}));
}

TEST_CASE("F4 arithmetic and Frobenius") {
  const FiniteField& F = FiniteField::get(2, 1, 2);
  CHECK(F.modulus() == std::vector<int>{1, 1, 1});
  Elem t = F.from_poly({0, 1});
  CHECK(F.mul(t, t) == F.from_poly({1, 1}));
  CHECK(F.sigma(t) == F.from_poly({1, 1}));
  CHECK(F.to_string(F.sigma(t)) == "t+1");
  CHECK(F.spec_string() == "p=2,e=1,m=2,mod=t^2+t+1");
  for (Elem a = 0; a < F.size(); ++a) {
    CHECK(F.sigma(F.sigma(a)) == a);
    CHECK(F.sigma_inv(F.sigma(a)) == a);
    CHECK(F.in_base_field(a) == (a < 2));
  }
}

TEST_CASE("field axioms exhaustively on small fields") {
  const FiniteField* fields[] = {&FiniteField::prime(2), &FiniteField::prime(3), &FiniteField::get(2, 1, 3),
                                 &FiniteField::get(3, 1, 2), &FiniteField::get(2, 2, 2)};
  for (const FiniteField* Fp : fields) {
    const FiniteField& F = *Fp;
    CAPTURE(F.spec_string());
    std::uint32_t fixed = 0;
    for (Elem a = 0; a < F.size(); ++a) {
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a) CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.sigma(a) == F.pow(a, F.q()));
      CHECK(F.sigma_pow(a, F.m()) == a);
      if (F.in_base_field(a)) ++fixed;
      for (Elem b = 0; b < F.size(); ++b) {
        CHECK(F.sigma(F.mul(a, b)) == F.mul(F.sigma(a), F.sigma(b)));
        CHECK(F.sigma(F.add(a, b)) == F.add(F.sigma(a), F.sigma(b)));
        for (Elem c = 0; c < F.size(); c += 3) CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      }
    }
    CHECK(fixed == F.q());
  }
}

TEST_CASE("explicit modulus validation") {
  CHECK_THROWS_AS(FiniteField::get(2, 1, 2, {1, 0, 1}), PreconditionError);
  CHECK_THROWS_AS(FiniteField::get(4, 1, 1), PreconditionError);
  const FiniteField& F = FiniteField::get(2, 1, 4, {1, 1, 0, 0, 1});
  CHECK(F.size() == 16);
  CHECK(&FiniteField::get(2, 1, 4, {1, 1, 0, 0, 1}) == &F);
}
