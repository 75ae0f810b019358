#include <random>

#include "doctest.h"
#include "xprod/cayley.hpp"

using namespace xprod;

namespace {

Vec random_element(const Field& f, std::mt19937_64& rng, std::size_t n = 8) {
  Vec v(n);
  for (auto& c : v) c = f.random(rng, 3);
  return v;
}

}  // namespace

TEST_CASE("multiplication table examples") {
  const Field& q = Field::rationals();
  Cayley st(q, CayleyBasis::Standard), cd(q, CayleyBasis::CD);
  CHECK(st.mul(st.parse("u1"), st.parse("v1")) == st.parse("-e1"));
  CHECK(st.mul(st.parse("v1"), st.parse("u1")) == st.parse("-e2"));
  CHECK(st.mul(st.parse("u1"), st.parse("u2")) == st.parse("v3"));
  CHECK(st.mul(st.parse("v3"), st.parse("v1")) == st.parse("u2"));
  CHECK(cd.mul(cd.parse("w1"), cd.parse("w2")) == cd.parse("w4"));
  CHECK(cd.mul(cd.parse("w4"), cd.parse("w1")) == cd.parse("w2"));
  CHECK(cd.mul(cd.parse("w2"), cd.parse("w1")) == cd.parse("-w4"));
  for (const Cayley* c : {&st, &cd}) {
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(c->mul(c->unit(), c->basis_vec(i)) == c->basis_vec(i));
      CHECK(c->mul(c->basis_vec(i), c->unit()) == c->basis_vec(i));
    }
  }
}

TEST_CASE("norm, polar and conjugation examples") {
  const Field& q = Field::rationals();
  Cayley st(q, CayleyBasis::Standard), cd(q, CayleyBasis::CD);
  CHECK(cd.norm(cd.unit()) == 1);
  CHECK(st.norm(st.unit()) == 1);
  for (std::size_t i = 1; i < 8; ++i) CHECK(cd.norm(cd.basis_vec(i)) == 1);
  CHECK(st.conj(st.parse("e1")) == st.parse("e2"));
  CHECK(cd.para_mul(cd.unit(), cd.unit()) == cd.unit());
  CHECK(cd.para_mul(cd.parse("w1"), cd.parse("w2")) == cd.parse("w4"));
  const Vec x = cd.parse("w3+w5-1");
  CHECK(cd.para_mul(x, cd.unit()) == cd.conj(x));
}

TEST_CASE("c0 cross product examples") {
  const Field& q = Field::rationals();
  Cayley st(q, CayleyBasis::Standard), cd(q, CayleyBasis::CD);
  CHECK(cd.c0_cross(cd.parse("w1"), cd.parse("w2")) == cd.parse("w4"));
  CHECK(is_zero(cd.c0_cross(cd.parse("w3"), cd.parse("w3"))));
  const Vec expected = scale(q.from_rational(mpq_class(1, 2)), st.parse("e2-e1"));
  CHECK(st.c0_cross(st.parse("u1"), st.parse("v1")) == expected);
  CHECK(st.bn(st.parse("u1"), st.parse("v1")) == q.from_rational(mpq_class(1, 2)));
  CHECK_THROWS_AS(st.c0_cross(st.parse("e1"), st.parse("u1")), InputError);
}

TEST_CASE("3C product and 3-fold products: examples") {
  const Field& q = Field::rationals();
  Cayley st(q, CayleyBasis::Standard), cd(q, CayleyBasis::CD);
  std::mt19937_64 rng(31);
  const Vec x = random_element(q, rng), y = random_element(q, rng);
  CHECK(cd.triple_3c(x, x, y) == scale(cd.norm(x), y));
  CHECK(cd.triple_3c(y, x, x) == scale(cd.norm(x), y));
  CHECK(cd.triple_3c(cd.unit(), cd.unit(), y) == y);
  CHECK(cd.triple_3c(cd.parse("w1"), cd.parse("w2"), cd.unit()) == cd.parse("-w4"));
  CHECK(is_zero(st.three_fold(1, st.unit(), y, st.unit())));
  CHECK(st.three_fold(1, st.parse("e1"), st.parse("e2"), st.parse("u1")) ==
        scale(q.from_rational(mpq_class(1, 2)), st.parse("u1")));
  CHECK(is_zero(st.three_fold(1, x, x, y)));
  CHECK(is_zero(st.three_fold(-1, x, x, y)));
  CHECK_THROWS_AS(st.three_fold(0, x, x, y), InputError);
}

TEST_CASE("quaternion cross product examples") {
  const Field& q = Field::rationals();
  Quaternions h(q);
  std::mt19937_64 rng(32);
  const Vec x = random_element(q, rng, 4), z = random_element(q, rng, 4);
  const Vec one = {q.one(), q.zero(), q.zero(), q.zero()};
  const Vec w1 = {q.zero(), q.one(), q.zero(), q.zero()};
  const Vec w2 = {q.zero(), q.zero(), q.one(), q.zero()};
  const Vec w4 = {q.zero(), q.zero(), q.zero(), q.one()};
  CHECK(is_zero(h.cross(x, x, z)));
  CHECK(is_zero(h.cross(one, one, z)));
  CHECK(h.cross(one, w1, w2) == scale(q.from_int(-2), w4));
  // Closed under multiplication.
  for (std::size_t i : Quaternions::kEmbed)
    for (std::size_t j : Quaternions::kEmbed) {
      const Vec p = h.octonions().mul(h.octonions().basis_vec(i), h.octonions().basis_vec(j));
      CHECK(h.embed(h.restrict(p)) == p);
    }
}

TEST_CASE("algebra identities on basis elements and fuzzed samples") {
  std::mt19937_64 rng(33);
  for (const char* name : {"Q", "Fp:5"}) {
    const Field& f = Field::parse(name);
    for (auto basis : {CayleyBasis::Standard, CayleyBasis::CD}) {
      Cayley c(f, basis);
      for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
          const Vec x = c.basis_vec(i), y = c.basis_vec(j);
          CHECK(c.norm(c.mul(x, y)) == c.norm(x) * c.norm(y));
          for (std::size_t k = 0; k < 8; ++k) {
            const Vec z = c.basis_vec(k);
            const Scalar lhs = c.polar(c.mul(x, y), z);
            CHECK(lhs == c.polar(y, c.mul(c.conj(x), z)));
            CHECK(lhs == c.polar(x, c.mul(z, c.conj(y))));
          }
        }
      const auto c0 = c.c0_basis();
      for (const auto& x : c0)
        for (const auto& y : c0)
          CHECK(c.c0_cross(c.c0_cross(x, y), y) == sub(scale(c.bn(x, y), y), scale(c.bn(y, y), x)));
      for (int t = 0; t < 50; ++t) {
        const Vec x = random_element(f, rng), y = random_element(f, rng);
        CHECK(c.norm(c.mul(x, y)) == c.norm(x) * c.norm(y));
        // Cayley-Hamilton.
        const Vec ch = add(sub(c.mul(x, x), scale(c.polar(x, c.unit()), x)), scale(c.norm(x), c.unit()));
        CHECK(is_zero(ch));
      }
    }
  }
}

TEST_CASE("quaternion identities on fuzzed samples") {
  std::mt19937_64 rng(34);
  const Field& f = Field::rationals();
  Quaternions h(f);
  for (int t = 0; t < 50; ++t) {
    const Vec x = random_element(f, rng, 4), y = random_element(f, rng, 4), z = random_element(f, rng, 4);
    const Vec yb = h.conj(y);
    const Vec xyz = h.mul(h.mul(x, yb), z), zyx = h.mul(h.mul(z, yb), x);
    const Vec xyx = h.mul(h.mul(x, yb), x), zyz = h.mul(h.mul(z, yb), z);
    const Scalar nx = h.norm(x), ny = h.norm(y), nz = h.norm(z);
    const Scalar pxz = h.polar(x, z), pxy = h.polar(x, y), pyz = h.polar(y, z);
    CHECK(h.norm(add(xyz, zyx)) + h.polar(xyx, zyz) == (pxz * pxz + 2 * nx * nz) * ny);
    CHECK(h.norm(add(xyz, zyx)) == 2 * nx * ny * nz + h.polar(xyz, zyx));
    CHECK(h.polar(xyx, zyz) == pxy * pyz * pxz - nx * pyz * pyz - nz * pxy * pxy + 2 * nx * ny * nz);
    const Vec cr = h.cross(x, y, z);
    CHECK(h.polar(cr, cr) == h.polar_space().gram_det({x, y, z}, {x, y, z}));
  }
}

TEST_CASE("CD basis change of basis is an algebra isomorphism") {
  for (const char* name : {"Q(i)", "Fp:5", "Fp:3(i)"}) {
    const Field& f = Field::parse(name);
    Cayley st(f, CayleyBasis::Standard), cd(f, CayleyBasis::CD);
    const Matrix p = Cayley::cd_to_standard(f);
    REQUIRE_FALSE(det(p).is_zero());
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) {
        const Vec lhs = p * cd.mul(cd.basis_vec(i), cd.basis_vec(j));
        CHECK(lhs == st.mul(p.col(i), p.col(j)));
      }
  }
  CHECK_THROWS_AS(Cayley::cd_to_standard(Field::rationals()), RequiresClosedField);
}
