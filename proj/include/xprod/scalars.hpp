#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "xprod/error.hpp"

namespace xprod {

class Scalar;

/*
 * Exact fields of characteristic != 2.
 *
 *   Q              rationals (GMP rationals, no overflow)
 *   Fp:p           prime field, p an odd prime
 *   K(sqrt:d)      quadratic extension of Q or Fp:p by a non-square d
 *   K(i)           shorthand for K(sqrt:-1)
 *
 * Fields are interned: every descriptor is created once and lives until
 * program exit, so scalars can refer to their field by plain pointer.
 */
class Field {
 public:
  static const Field& rationals();
  static const Field& prime(unsigned long p);
  static const Field& extension(const Field& base, const mpq_class& d);
  static const Field& parse(std::string_view descriptor);

  std::string name() const;

  bool is_prime_field() const { return p_ != 0; }
  bool is_extension() const { return base_ != nullptr; }
  unsigned long characteristic() const { return p_; }
  const Field& base() const { return base_ ? *base_ : *this; }
  /// The adjoined radicand d (only meaningful for extensions).
  const mpq_class& radicand() const { return d_; }

  bool is_finite() const { return p_ != 0; }
  /// Number of elements; 0 for infinite fields.
  mpz_class order() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long v) const;
  Scalar from_rational(const mpq_class& v) const;
  /// a + b*sqrt(d); b must be zero outside extensions.
  Scalar element(const mpq_class& a, const mpq_class& b = 0) const;
  /// Parses "3", "-1/2" or "(a,b)" (the latter meaning a + b*sqrt(d)).
  Scalar parse_scalar(std::string_view text) const;

  /// A square root with the canonical sign, if one exists in this field.
  std::optional<Scalar> sqrt(const Scalar& x) const;
  bool has_sqrt_minus_one() const;
  /// All m-th roots of unity that lie in this field, in canonical order.
  std::vector<Scalar> roots_of_unity(unsigned m) const;
  /// Uniform-ish element with small integer coordinates in [-bound, bound].
  Scalar random(std::mt19937_64& rng, int bound = 5) const;

  bool operator==(const Field& other) const { return this == &other; }

  // Base-field primitives on raw coordinates (used by Scalar).
  void reduce(mpq_class& v) const;
  mpq_class base_inverse(const mpq_class& v) const;
  bool base_positive(const mpq_class& v) const;
  std::optional<mpq_class> base_sqrt(const mpq_class& v) const;

 private:
  Field() = default;
  static const Field& intern(unsigned long p, const Field* base, const mpq_class& d);

  unsigned long p_ = 0;
  const Field* base_ = nullptr;
  mpq_class d_ = 0;
};

/*
 * An element of a Field, in canonical form: a + b*sqrt(d) with both
 * coordinates reduced in the base field (reduced fraction over Q, least
 * nonnegative residue over Fp). Equality is structural.
 *
 * A default-constructed or integer-constructed scalar is an untyped
 * literal; it adopts the field of the other operand in arithmetic.
 */
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : a_(v) {}  // NOLINT: integer literals are scalars

  const Field* field() const { return field_; }
  const mpq_class& re() const { return a_; }
  const mpq_class& im() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_one() const;

  Scalar inverse() const;
  Scalar pow(long e) const;
  Scalar pow(const mpz_class& e) const;
  /// The same value viewed in `f` (literal adoption or base -> extension).
  Scalar in(const Field& f) const;

  std::string str() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& x, const Scalar& y);
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

 private:
  friend class Field;
  Scalar(const Field* f, mpq_class a, mpq_class b);

  const Field* field_ = nullptr;
  mpq_class a_ = 0;
  mpq_class b_ = 0;
};

/// The field two operands live in after literal adoption / promotion.
const Field* common_field(const Field* f, const Field* g);

}  // namespace xprod
