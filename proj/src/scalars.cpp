#include "xprod/scalars.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>

namespace xprod {

namespace {

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  mpq_class v;
  if (s.empty() || v.set_str(s, 10) != 0) throw InputError("malformed scalar '" + std::string(text) + "'");
  if (sgn(v.get_den()) == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  v.canonicalize();
  return v;
}

// Tonelli-Shanks; `a` is a residue mod the odd prime `p` with (a/p) = 1.
mpz_class tonelli_shanks(const mpz_class& a, const mpz_class& p) {
  mpz_class q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  mpz_class c, r, t, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    mpz_class t2 = t;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
    }
    mpz_class b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
    r = r * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return r;
}

bool coords_less(const Scalar& x, const Scalar& y) {
  if (x.re() != y.re()) return x.re() < y.re();
  return x.im() < y.im();
}

}  // namespace

// ---------------------------------------------------------------- Field

const Field& Field::intern(unsigned long p, const Field* base, const mpq_class& d) {
  static std::mutex mu;
  static std::deque<Field> registry;
  std::lock_guard<std::mutex> lock(mu);
  for (const Field& f : registry) {
    if (f.p_ == p && f.base_ == base && f.d_ == d) return f;
  }
  Field f;
  f.p_ = p;
  f.base_ = base;
  f.d_ = d;
  registry.push_back(f);
  return registry.back();
}

const Field& Field::rationals() { return intern(0, nullptr, 0); }

const Field& Field::prime(unsigned long p) {
  if (p == 2) throw InputError("characteristic 2 is not supported");
  mpz_class pz = p;
  if (p < 3 || mpz_probab_prime_p(pz.get_mpz_t(), 30) == 0) {
    throw InputError("Fp:" + std::to_string(p) + " is not a prime field");
  }
  return intern(p, nullptr, 0);
}

const Field& Field::extension(const Field& base, const mpq_class& d) {
  if (base.is_extension()) throw InputError("towers of quadratic extensions are not supported");
  mpq_class dr = d;
  base.reduce(dr);
  if (base.base_sqrt(dr)) {
    throw InputError(dr.get_str() + " is a square in " + base.name() + "; extension would not be a field");
  }
  return intern(base.p_, &base, dr);
}

const Field& Field::parse(std::string_view descriptor) {
  std::string s(descriptor);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  std::string head = s;
  std::string tail;
  if (auto paren = s.find('('); paren != std::string::npos) {
    if (s.back() != ')') throw InputError("malformed field descriptor '" + s + "'");
    head = s.substr(0, paren);
    tail = s.substr(paren + 1, s.size() - paren - 2);
  }
  const Field* base = nullptr;
  if (head == "Q") {
    base = &rationals();
  } else if (head.rfind("Fp:", 0) == 0) {
    const std::string digits = head.substr(3);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw InputError("malformed prime in field descriptor '" + s + "'");
    }
    base = &prime(std::stoul(digits));
  } else {
    throw InputError("unknown field descriptor '" + s + "'");
  }
  if (tail.empty()) return *base;
  if (tail == "i") return extension(*base, -1);
  if (tail.rfind("sqrt:", 0) == 0) return extension(*base, parse_rational(tail.substr(5)));
  throw InputError("malformed extension in field descriptor '" + s + "'");
}

std::string Field::name() const {
  std::string b = p_ == 0 ? "Q" : "Fp:" + std::to_string(p_);
  if (!is_extension()) return b;
  mpq_class minus_one = -1;
  base().reduce(minus_one);
  if (d_ == minus_one) return b + "(i)";
  return b + "(sqrt:" + d_.get_str() + ")";
}

mpz_class Field::order() const {
  if (p_ == 0) return 0;
  mpz_class q = p_;
  return is_extension() ? q * q : q;
}

Scalar Field::zero() const { return Scalar(this, 0, 0); }
Scalar Field::one() const { return Scalar(this, 1, 0); }
Scalar Field::from_int(long v) const { return element(v, 0); }
Scalar Field::from_rational(const mpq_class& v) const { return element(v, 0); }

Scalar Field::element(const mpq_class& a, const mpq_class& b) const {
  if (!is_extension() && sgn(b) != 0) throw InputError("field " + name() + " has no adjoined square root");
  mpq_class ra = a, rb = b;
  reduce(ra);
  reduce(rb);
  return Scalar(this, ra, rb);
}

Scalar Field::parse_scalar(std::string_view text) const {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (!s.empty() && s.front() == '(') {
    auto comma = s.find(',');
    if (comma == std::string::npos || s.back() != ')') throw InputError("malformed scalar '" + s + "'");
    return element(parse_rational(s.substr(1, comma - 1)),
                   parse_rational(s.substr(comma + 1, s.size() - comma - 2)));
  }
  return element(parse_rational(s), 0);
}

void Field::reduce(mpq_class& v) const {
  if (p_ == 0) return;
  const mpz_class p = p_;
  mpz_class num = v.get_num();
  if (v.get_den() != 1) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), v.get_den_mpz_t(), p.get_mpz_t()) == 0) {
      throw InputError("denominator " + v.get_den().get_str() + " is not invertible mod " + p.get_str());
    }
    num *= inv;
  }
  mpz_mod(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
  v = num;
}

mpq_class Field::base_inverse(const mpq_class& v) const {
  if (sgn(v) == 0) throw Error("division by zero");
  if (p_ == 0) return 1 / v;
  mpz_class inv;
  const mpz_class p = p_;
  mpz_invert(inv.get_mpz_t(), v.get_num_mpz_t(), p.get_mpz_t());
  return mpq_class(inv);
}

bool Field::base_positive(const mpq_class& v) const {
  if (p_ == 0) return sgn(v) > 0;
  return sgn(v) != 0 && v.get_num() <= mpz_class((p_ - 1) / 2);
}

std::optional<mpq_class> Field::base_sqrt(const mpq_class& v) const {
  if (sgn(v) == 0) return mpq_class(0);
  if (p_ == 0) {
    if (sgn(v) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(v.get_num_mpz_t()) || !mpz_perfect_square_p(v.get_den_mpz_t())) {
      return std::nullopt;
    }
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), v.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), v.get_den_mpz_t());
    return mpq_class(n, d);
  }
  const mpz_class p = p_;
  const mpz_class a = v.get_num();
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;
  mpz_class r = tonelli_shanks(a, p);
  mpz_class other = p - r;
  return mpq_class(other < r ? other : r);
}

std::optional<Scalar> Field::sqrt(const Scalar& x0) const {
  const Scalar x = x0.in(*this);
  if (x.is_zero()) return zero();
  if (!is_extension()) {
    auto r = base_sqrt(x.re());
    if (!r) return std::nullopt;
    return Scalar(this, *r, 0);
  }
  std::optional<Scalar> root;
  if (sgn(x.im()) == 0) {
    if (auto r = base_sqrt(x.re())) {
      root = Scalar(this, *r, 0);
    } else {
      mpq_class q = x.re() * base_inverse(d_);
      reduce(q);
      if (auto r2 = base_sqrt(q)) root = Scalar(this, 0, *r2);
    }
  } else {
    mpq_class norm = x.re() * x.re() - d_ * x.im() * x.im();
    reduce(norm);
    auto sn = base_sqrt(norm);
    if (!sn) return std::nullopt;
    const mpq_class half = base_inverse(2);
    for (int sign : {1, -1}) {
      mpq_class u2 = (x.re() + sign * *sn) * half;
      reduce(u2);
      auto u = base_sqrt(u2);
      if (!u || sgn(*u) == 0) continue;
      mpq_class v = x.im() * base_inverse(2 * *u);
      reduce(v);
      root = Scalar(this, *u, v);
      break;
    }
  }
  if (!root) return std::nullopt;
  const bool positive =
      sgn(root->re()) != 0 ? base_positive(root->re()) : base_positive(root->im());
  return positive ? *root : -*root;
}

bool Field::has_sqrt_minus_one() const { return sqrt(from_int(-1)).has_value(); }

std::vector<Scalar> Field::roots_of_unity(unsigned m) const {
  if (m == 0) throw InputError("roots_of_unity needs m >= 1");
  std::vector<Scalar> roots;
  auto keep_if_root = [&](const Scalar& z) {
    if (z.pow(static_cast<long>(m)).is_one() &&
        std::none_of(roots.begin(), roots.end(), [&](const Scalar& r) { return r == z; })) {
      roots.push_back(z);
    }
  };
  if (p_ == 0) {
    keep_if_root(one());
    keep_if_root(from_int(-1));
    if (auto i = sqrt(from_int(-1))) {
      keep_if_root(*i);
      keep_if_root(-*i);
    }
    if (auto s = sqrt(from_int(-3))) {
      const Scalar half = from_rational(mpq_class(1, 2));
      for (int a : {1, -1})
        for (int b : {1, -1}) keep_if_root((from_int(a) + from_int(b) * *s) * half);
    }
  } else {
    const mpz_class group_order = order() - 1;
    mpz_class k;
    const mpz_class mz = m;
    mpz_gcd(k.get_mpz_t(), mz.get_mpz_t(), group_order.get_mpz_t());
    const mpz_class cofactor = group_order / k;
    // x^cofactor is a k-th root of unity; sweeping x covers all of them.
    for (unsigned long a = 0; roots.size() < k.get_ui(); ++a) {
      const unsigned long bmax = is_extension() ? p_ : 1;
      for (unsigned long b = 0; b < bmax && roots.size() < k.get_ui(); ++b) {
        Scalar x = element(a, b);
        if (x.is_zero()) continue;
        keep_if_root(x.pow(cofactor));
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Scalar& x, const Scalar& y) {
    if (x.is_one() != y.is_one()) return x.is_one();
    return coords_less(x, y);
  });
  return roots;
}

Scalar Field::random(std::mt19937_64& rng, int bound) const {
  std::uniform_int_distribution<long> dist(-bound, bound);
  const long a = dist(rng);
  const long b = is_extension() ? dist(rng) : 0;
  return element(a, b);
}

// ---------------------------------------------------------------- Scalar

const Field* common_field(const Field* f, const Field* g) {
  if (f == g || g == nullptr) return f;
  if (f == nullptr) return g;
  if (g->is_extension() && &g->base() == f) return g;
  if (f->is_extension() && &f->base() == g) return f;
  throw InputError("field mismatch: " + f->name() + " vs " + g->name());
}

Scalar::Scalar(const Field* f, mpq_class a, mpq_class b) : field_(f), a_(std::move(a)), b_(std::move(b)) {}

bool Scalar::is_one() const { return a_ == 1 && sgn(b_) == 0; }

Scalar Scalar::in(const Field& f) const {
  if (field_ == &f) return *this;
  if (field_ == nullptr) return f.element(a_, b_);
  if (f.is_extension() && &f.base() == field_) return Scalar(&f, a_, 0);
  throw InputError("cannot view an element of " + field_->name() + " in " + f.name());
}

Scalar& Scalar::operator+=(const Scalar& o) {
  const Field* f = common_field(field_, o.field_);
  if (f != field_) *this = in(*f);
  if (f != o.field_ && f != nullptr) return *this += o.in(*f);
  a_ += o.a_;
  b_ += o.b_;
  if (f) {
    f->reduce(a_);
    f->reduce(b_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  const Field* f = common_field(field_, o.field_);
  if (f != field_) *this = in(*f);
  if (f != o.field_ && f != nullptr) return *this *= o.in(*f);
  if (sgn(b_) == 0 && sgn(o.b_) == 0) {
    a_ *= o.a_;
    if (f) f->reduce(a_);
    return *this;
  }
  const mpq_class& d = f->radicand();
  mpq_class a = a_ * o.a_ + b_ * o.b_ * d;
  mpq_class b = a_ * o.b_ + b_ * o.a_;
  f->reduce(a);
  f->reduce(b);
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  if (field_) {
    field_->reduce(r.a_);
    field_->reduce(r.b_);
  }
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("division by zero");
  if (field_ == nullptr) return Scalar(nullptr, 1 / a_, 0);
  if (sgn(b_) == 0) return Scalar(field_, field_->base_inverse(a_), 0);
  mpq_class norm = a_ * a_ - field_->radicand() * b_ * b_;
  field_->reduce(norm);
  const mpq_class inv = field_->base_inverse(norm);
  mpq_class a = a_ * inv, b = -b_ * inv;
  field_->reduce(a);
  field_->reduce(b);
  return Scalar(field_, a, b);
}

Scalar Scalar::pow(long e) const { return pow(mpz_class(e)); }

Scalar Scalar::pow(const mpz_class& e0) const {
  if (sgn(e0) < 0) return inverse().pow(mpz_class(-e0));
  Scalar result = field_ ? field_->one() : Scalar(1);
  Scalar base = *this;
  mpz_class e = e0;
  while (sgn(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result *= base;
    e >>= 1;
    if (sgn(e) > 0) base *= base;
  }
  return result;
}

std::string Scalar::str() const {
  if (sgn(b_) == 0) return a_.get_str();
  return "(" + a_.get_str() + "," + b_.get_str() + ")";
}

bool operator==(const Scalar& x, const Scalar& y) {
  const Field* f = common_field(x.field_, y.field_);
  if (f == nullptr || (x.field_ == f && y.field_ == f)) return x.a_ == y.a_ && x.b_ == y.b_;
  const Scalar xs = x.in(*f), ys = y.in(*f);
  return xs.a_ == ys.a_ && xs.b_ == ys.b_;
}

}  // namespace xprod
