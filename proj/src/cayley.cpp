#include "xprod/cayley.hpp"

#include <cctype>

namespace xprod {

std::string to_string(CayleyBasis b) { return b == CayleyBasis::Standard ? "std" : "cd"; }

CayleyBasis parse_cayley_basis(const std::string& tag) {
  if (tag == "std") return CayleyBasis::Standard;
  if (tag == "cd") return CayleyBasis::CD;
  throw InputError("unknown Cayley basis tag '" + tag + "' (expected std or cd)");
}

namespace {

constexpr int E1 = 0, E2 = 1;
constexpr int U(int i) { return 1 + i; }  // i = 1..3
constexpr int V(int i) { return 4 + i; }
constexpr int next3(int i) { return i % 3 + 1; }

}  // namespace

Cayley::Cayley(const Field& f, CayleyBasis basis) : field_(&f), basis_(basis) {
  for (auto& row : table_) row.fill({0, 0});
  auto set = [&](int i, int j, int k, int s) { table_[i][j] = {k, s}; };
  if (basis == CayleyBasis::Standard) {
    labels_ = {"e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3"};
    set(E1, E1, E1, 1);
    set(E2, E2, E2, 1);
    for (int i = 1; i <= 3; ++i) {
      set(E1, U(i), U(i), 1);
      set(U(i), E2, U(i), 1);
      set(E2, V(i), V(i), 1);
      set(V(i), E1, V(i), 1);
      set(U(i), V(i), E1, -1);
      set(V(i), U(i), E2, -1);
      const int j = next3(i), k = next3(j);
      set(U(i), U(j), V(k), 1);
      set(U(j), U(i), V(k), -1);
      set(V(i), V(j), U(k), 1);
      set(V(j), V(i), U(k), -1);
    }
    polar_[E1][E2] = polar_[E2][E1] = 1;
    for (int i = 1; i <= 3; ++i) polar_[U(i)][V(i)] = polar_[V(i)][U(i)] = 1;
  } else {
    labels_ = {"1", "w1", "w2", "w3", "w4", "w5", "w6", "w7"};
    for (int i = 0; i < 8; ++i) {
      set(0, i, i, 1);
      set(i, 0, i, 1);
    }
    for (int i = 1; i <= 7; ++i) {
      set(i, i, 0, -1);
      const int a = i, b = i % 7 + 1, c = (i + 2) % 7 + 1;
      const int cyc[3] = {a, b, c};
      for (int t = 0; t < 3; ++t) {
        const int x = cyc[t], y = cyc[(t + 1) % 3], z = cyc[(t + 2) % 3];
        set(x, y, z, 1);
        set(y, x, z, -1);
      }
    }
    for (int i = 0; i < 8; ++i) polar_[i][i] = 2;
  }
}

std::optional<std::size_t> Cayley::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < kDim; ++i)
    if (labels_[i] == label) return i;
  if (basis_ == CayleyBasis::CD && (label == "w0" || label == "e0")) return 0;
  return std::nullopt;
}

Vec Cayley::unit() const {
  Vec u = zero();
  if (basis_ == CayleyBasis::Standard) {
    u[E1] = field_->one();
    u[E2] = field_->one();
  } else {
    u[0] = field_->one();
  }
  return u;
}

Vec Cayley::parse(const std::string& text) const {
  Vec x = zero();
  std::size_t pos = 0;
  bool any = false;
  while (pos < text.size()) {
    int sign = 1;
    while (pos < text.size() && (text[pos] == '+' || text[pos] == '-' || text[pos] == ' ')) {
      if (text[pos] == '-') sign = -sign;
      ++pos;
    }
    std::size_t end = pos;
    while (end < text.size() && std::isalnum(static_cast<unsigned char>(text[end]))) ++end;
    const std::string tok = text.substr(pos, end - pos);
    if (tok == "1") {
      x = add(x, scale(field_->from_int(sign), unit()));
    } else if (auto idx = index_of(tok)) {
      x[*idx] += field_->from_int(sign);
    } else {
      throw InputError("unknown Cayley basis element '" + tok + "' in '" + text + "'");
    }
    any = true;
    pos = end;
  }
  if (!any) throw InputError("empty Cayley element");
  return x;
}

std::string Cayley::str(const Vec& x) const {
  std::string s;
  for (std::size_t i = 0; i < kDim; ++i) {
    if (x[i].is_zero()) continue;
    const Scalar& c = x[i];
    std::string term;
    if (c.is_one()) {
      term = labels_[i];
    } else if ((-c).is_one()) {
      term = "-" + labels_[i];
    } else {
      term = c.str() + "*" + labels_[i];
    }
    if (!s.empty() && term[0] != '-') s += "+";
    s += term;
  }
  return s.empty() ? "0" : s;
}

Vec Cayley::mul(const Vec& x, const Vec& y) const {
  Vec r = zero();
  for (std::size_t i = 0; i < kDim; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < kDim; ++j) {
      const Entry e = table_[i][j];
      if (e.sign == 0 || y[j].is_zero()) continue;
      if (e.sign > 0) {
        r[e.index] += x[i] * y[j];
      } else {
        r[e.index] -= x[i] * y[j];
      }
    }
  }
  return r;
}

Scalar Cayley::polar(const Vec& x, const Vec& y) const {
  Scalar s = field_->zero();
  for (std::size_t i = 0; i < kDim; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < kDim; ++j) {
      if (polar_[i][j] != 0 && !y[j].is_zero()) s += x[i] * y[j] * polar_[i][j];
    }
  }
  return s;
}

Scalar Cayley::norm(const Vec& x) const { return polar(x, x) / field_->from_int(2); }

Scalar Cayley::bn(const Vec& x, const Vec& y) const { return polar(x, y) / field_->from_int(2); }

Vec Cayley::conj(const Vec& x) const { return sub(scale(polar(x, unit()), unit()), x); }

Vec Cayley::para_mul(const Vec& x, const Vec& y) const { return mul(conj(x), conj(y)); }

Vec Cayley::c0_cross(const Vec& x, const Vec& y) const {
  if (!in_c0(x) || !in_c0(y)) throw InputError("c0_cross: argument not in C0");
  return add(mul(x, y), scale(bn(x, y), unit()));
}

Vec Cayley::triple_3c(const Vec& x, const Vec& y, const Vec& z) const { return mul(mul(x, conj(y)), z); }

Vec Cayley::three_fold(int eps, const Vec& x, const Vec& y, const Vec& z) const {
  if (eps != 1 && eps != -1) throw InputError("three_fold: epsilon must be +1 or -1");
  Vec r = eps == 1 ? mul(mul(x, conj(y)), z) : mul(x, mul(conj(y), z));
  r = sub(r, scale(bn(x, y), z));
  r = sub(r, scale(bn(y, z), x));
  return add(r, scale(bn(x, z), y));
}

Matrix Cayley::left_mul(const Vec& x) const {
  Matrix m(kDim, kDim, *field_);
  for (std::size_t j = 0; j < kDim; ++j) m.set_col(j, mul(x, basis_vec(j)));
  return m;
}

Matrix Cayley::right_mul(const Vec& x) const {
  Matrix m(kDim, kDim, *field_);
  for (std::size_t j = 0; j < kDim; ++j) m.set_col(j, mul(basis_vec(j), x));
  return m;
}

Matrix Cayley::para_left(const Vec& x) const {
  Matrix m(kDim, kDim, *field_);
  for (std::size_t j = 0; j < kDim; ++j) m.set_col(j, para_mul(x, basis_vec(j)));
  return m;
}

Matrix Cayley::para_right(const Vec& x) const {
  Matrix m(kDim, kDim, *field_);
  for (std::size_t j = 0; j < kDim; ++j) m.set_col(j, para_mul(basis_vec(j), x));
  return m;
}

Matrix Cayley::conj_matrix() const {
  Matrix m(kDim, kDim, *field_);
  for (std::size_t j = 0; j < kDim; ++j) m.set_col(j, conj(basis_vec(j)));
  return m;
}

QuadSpace Cayley::polar_space() const {
  Matrix g(kDim, kDim, *field_);
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) g(i, j) = field_->from_int(polar_[i][j]);
  return QuadSpace(g);
}

QuadSpace Cayley::bn_space() const { return polar_space().scaled(field_->from_rational(mpq_class(1, 2))); }

std::vector<Vec> Cayley::c0_basis() const {
  std::vector<Vec> b;
  if (basis_ == CayleyBasis::Standard) {
    b.push_back(sub(basis_vec(E1), basis_vec(E2)));
    for (std::size_t i = 2; i < kDim; ++i) b.push_back(basis_vec(i));
  } else {
    for (std::size_t i = 1; i < kDim; ++i) b.push_back(basis_vec(i));
  }
  return b;
}

Matrix Cayley::cd_to_standard(const Field& f) {
  auto i = f.sqrt(f.from_int(-1));
  if (!i) throw RequiresClosedField("the CD/standard change of basis needs sqrt(-1) in " + f.name());
  const Scalar one = f.one();
  Matrix m(kDim, kDim, f);
  m(E1, 0) = one;  // 1 = e1 + e2
  m(E2, 0) = one;
  m(E1, 1) = *i;  // w1 = i(e1 - e2)
  m(E2, 1) = -*i;
  m(U(1), 2) = one;  // w2 = u1 + v1
  m(V(1), 2) = one;
  m(U(2), 3) = one;  // w3 = u2 + v2
  m(V(2), 3) = one;
  m(U(1), 4) = *i;  // w4 = i(u1 - v1)
  m(V(1), 4) = -*i;
  m(U(3), 5) = one;  // w5 = u3 + v3
  m(V(3), 5) = one;
  m(U(3), 6) = *i;  // w6 = i(u3 - v3)
  m(V(3), 6) = -*i;
  m(U(2), 7) = *i;  // w7 = i(u2 - v2)
  m(V(2), 7) = -*i;
  return m;
}

// ---------------------------------------------------------------- quaternions

Vec Quaternions::embed(const Vec& q) const {
  if (q.size() != kDim) throw InputError("quaternion coordinates must have length 4");
  Vec x = cd_.zero();
  for (std::size_t k = 0; k < kDim; ++k) x[kEmbed[k]] = q[k].in(field());
  return x;
}

Vec Quaternions::restrict(const Vec& x) const {
  Vec q(kDim);
  for (std::size_t k = 0; k < kDim; ++k) q[k] = x[kEmbed[k]];
  return q;
}

Vec Quaternions::mul(const Vec& x, const Vec& y) const { return restrict(cd_.mul(embed(x), embed(y))); }
Vec Quaternions::conj(const Vec& x) const { return restrict(cd_.conj(embed(x))); }
Scalar Quaternions::norm(const Vec& x) const { return cd_.norm(embed(x)); }
Scalar Quaternions::polar(const Vec& x, const Vec& y) const { return cd_.polar(embed(x), embed(y)); }

Vec Quaternions::cross(const Vec& x, const Vec& y, const Vec& z) const {
  const Vec yb = conj(y);
  return sub(mul(mul(x, yb), z), mul(mul(z, yb), x));
}

QuadSpace Quaternions::polar_space() const {
  return QuadSpace(field().from_int(2) * Matrix::identity(field(), kDim));
}

}  // namespace xprod
