#include <random>

#include "doctest.h"
#include "xprod/scalars.hpp"

using namespace xprod;

TEST_CASE("field descriptors parse and print") {
  CHECK(Field::parse("Q").name() == "Q");
  CHECK(Field::parse("Fp:5").name() == "Fp:5");
  CHECK(Field::parse("Q(i)").name() == "Q(i)");
  CHECK(Field::parse("Fp:7(sqrt:3)").name() == "Fp:7(sqrt:3)");
  CHECK(Field::parse("Q(sqrt:-3)").name() == "Q(sqrt:-3)");
  // Interning: the same descriptor yields the same object.
  CHECK(&Field::parse("Fp:5") == &Field::prime(5));
  // Over F_3, -1 = 2 is a non-square, and sqrt:2 is the same field as (i).
  CHECK(&Field::parse("Fp:3(sqrt:2)") == &Field::parse("Fp:3(i)"));
  CHECK(Field::parse("Fp:3(sqrt:2)").name() == "Fp:3(i)");
}

TEST_CASE("bad descriptors are rejected") {
  CHECK_THROWS_AS(Field::parse("Fp:2"), InputError);
  CHECK_THROWS_AS(Field::parse("Fp:9"), InputError);
  CHECK_THROWS_AS(Field::parse("R"), InputError);
  CHECK_THROWS_AS(Field::parse("Fp:5(i)"), InputError);  // -1 = 4 = 2^2 in F_5
  CHECK_THROWS_AS(Field::parse("Q(sqrt:4)"), InputError);
}

TEST_CASE("sqrt_opt examples") {
  const Field& f5 = Field::prime(5);
  CHECK(*f5.sqrt(f5.from_int(4)) == f5.from_int(2));
  CHECK(*Field::rationals().sqrt(Field::rationals().zero()) == 0);
  CHECK_FALSE(Field::rationals().sqrt(Field::rationals().from_int(-1)).has_value());
  CHECK(*Field::rationals().sqrt(Field::rationals().from_rational(mpq_class(9, 4))) ==
        Field::rationals().from_rational(mpq_class(3, 2)));
}

TEST_CASE("sqrt over prime fields agrees with exhaustive residue search") {
  for (unsigned long p : {3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 97ul}) {
    const Field& f = Field::prime(p);
    for (unsigned long a = 0; a < p; ++a) {
      bool square = false;
      for (unsigned long r = 0; r < p; ++r) square |= (r * r) % p == a;
      auto s = f.sqrt(f.from_int(static_cast<long>(a)));
      CHECK(s.has_value() == square);
      if (s) {
        CHECK(*s * *s == f.from_int(static_cast<long>(a)));
        CHECK(s->re() <= (p - 1) / 2);
      }
    }
  }
}

TEST_CASE("has_sqrt_minus_one") {
  CHECK(Field::prime(5).has_sqrt_minus_one());
  CHECK_FALSE(Field::rationals().has_sqrt_minus_one());
  CHECK_FALSE(Field::prime(3).has_sqrt_minus_one());
  CHECK(Field::parse("Q(i)").has_sqrt_minus_one());
  CHECK(Field::parse("Fp:3(i)").has_sqrt_minus_one());
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(0x5EED);
  for (const char* name : {"Q", "Fp:5", "Fp:97", "Q(i)", "Q(sqrt:-3)", "Fp:7(sqrt:3)", "Fp:3(i)"}) {
    const Field& f = Field::parse(name);
    for (int t = 0; t < 200; ++t) {
      const Scalar a = f.random(rng), b = f.random(rng), c = f.random(rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a - a == f.zero());
      if (!a.is_zero()) CHECK(a * a.inverse() == f.one());
    }
  }
}

TEST_CASE("sqrt squares back on fuzzed samples") {
  std::mt19937_64 rng(7);
  for (const char* name : {"Q", "Fp:13", "Q(i)", "Fp:7(sqrt:3)", "Fp:3(i)", "Q(sqrt:2)"}) {
    const Field& f = Field::parse(name);
    int found = 0;
    for (int t = 0; t < 300; ++t) {
      const Scalar a = f.random(rng);
      // Squares of random elements must have a root; the root squares back.
      const Scalar sq = a * a;
      auto r = f.sqrt(sq);
      REQUIRE(r.has_value());
      CHECK(*r * *r == sq);
      CHECK((*r == a || *r == -a));
      if (auto r2 = f.sqrt(a)) {
        CHECK(*r2 * *r2 == a);
        ++found;
      }
    }
    CHECK(found > 0);
  }
}

TEST_CASE("untyped literals adopt the field of the other operand") {
  const Field& f = Field::prime(5);
  CHECK(f.from_int(3) + 4 == f.from_int(2));
  CHECK((Scalar(7) * f.one()).field() == &f);
  CHECK(f.parse_scalar("1/2") * 2 == f.one());
  CHECK_THROWS_AS(f.parse_scalar("1/5"), InputError);
  CHECK_THROWS_AS(f.one() + Field::prime(7).one(), InputError);
}

TEST_CASE("quadratic extension arithmetic") {
  const Field& k = Field::parse("Q(i)");
  const Scalar i = k.element(0, 1);
  CHECK(i * i == k.from_int(-1));
  CHECK(i.inverse() == -i);
  CHECK(k.parse_scalar("(1,2)").str() == "(1,2)");
  CHECK((k.from_int(3) * i).str() == "(0,3)");
  // Base elements promote into the extension.
  CHECK(Field::rationals().from_int(2) * i == k.element(0, 2));
  CHECK(*k.sqrt(k.from_int(-4)) == k.element(0, 2));
  CHECK(i.pow(4).is_one());
  CHECK(i.pow(-1) == -i);
}

TEST_CASE("roots of unity") {
  CHECK(Field::rationals().roots_of_unity(2).size() == 2);
  CHECK(Field::rationals().roots_of_unity(3).size() == 1);
  CHECK(Field::prime(5).roots_of_unity(2).size() == 2);
  CHECK(Field::prime(7).roots_of_unity(3).size() == 3);
  CHECK(Field::prime(5).roots_of_unity(3).size() == 1);
  CHECK(Field::parse("Q(sqrt:-3)").roots_of_unity(3).size() == 3);
  CHECK(Field::parse("Q(i)").roots_of_unity(4).size() == 4);
  CHECK(Field::parse("Fp:5(sqrt:2)").roots_of_unity(3).size() == 3);
  for (const auto& z : Field::prime(7).roots_of_unity(3)) CHECK(z.pow(3).is_one());
  CHECK(Field::prime(7).roots_of_unity(3).front().is_one());
}
