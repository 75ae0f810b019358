#include "xprod/linalg.hpp"

#include <utility>

namespace xprod {

Vec zero_vec(const Field& f, std::size_t n) { return Vec(n, f.zero()); }

Vec unit_vec(const Field& f, std::size_t n, std::size_t i) {
  Vec v(n, f.zero());
  v.at(i) = f.one();
  return v;
}

Vec add(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw InputError("vector length mismatch");
  Vec r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

Vec sub(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw InputError("vector length mismatch");
  Vec r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

Vec scale(const Scalar& s, const Vec& x) {
  Vec r = x;
  for (auto& c : r) c *= s;
  return r;
}

Scalar dot(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw InputError("vector length mismatch");
  Scalar s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero() && !y[i].is_zero()) s += x[i] * y[i];
  }
  return s;
}

bool is_zero(const Vec& x) {
  for (const auto& c : x)
    if (!c.is_zero()) return false;
  return true;
}

Vec vec_in(const Vec& x, const Field& f) {
  Vec r;
  r.reserve(x.size());
  for (const auto& c : x) r.push_back(c.in(f));
  return r;
}

std::string str(const Vec& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += x[i].str();
  }
  return s + "]";
}

const Field* typed_field(const Vec& v) {
  const Field* f = nullptr;
  for (const auto& c : v) f = common_field(f, c.field());
  return f;
}

const Field* typed_field(const Matrix& m) {
  const Field* f = nullptr;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) f = common_field(f, m(i, j).field());
  return f;
}

const Field& field_of(const Vec& v) {
  const Field* f = typed_field(v);
  return f ? *f : Field::rationals();
}

const Field& field_of(const Matrix& m) {
  const Field* f = typed_field(m);
  return f ? *f : Field::rationals();
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, const Field& f)
    : rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(n, n, f);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Matrix Matrix::diagonal(const Vec& d) {
  const Field& f = field_of(d);
  Matrix m(d.size(), d.size(), f);
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i].in(f);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_cols(const std::vector<Vec>& cols) { return from_rows(cols).transpose(); }

Matrix Matrix::from_ints(const Field& f, const std::vector<std::vector<long>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows[0].size(), f);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = f.from_int(rows[i][j]);
  }
  return m;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<long>(i * cols_),
             data_.begin() + static_cast<long>((i + 1) * cols_));
}

Vec Matrix::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_col(std::size_t j, const Vec& v) {
  if (v.size() != rows_) throw InputError("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::in(const Field& f) const {
  Matrix m = *this;
  for (auto& c : m.data_) c = c.in(f);
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

Scalar Matrix::trace() const {
  Scalar t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& c : data_)
    if (!c.is_zero()) return false;
  return true;
}

bool Matrix::is_symmetric() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix shape mismatch in product");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
      }
    }
  }
  if (const Field* f = common_field(typed_field(a), typed_field(b)))
    for (auto& x : c.data_) x = x.in(*f);
  return c;
}

Matrix operator*(const Scalar& s, Matrix a) {
  for (auto& x : a.data_) x *= s;
  return a;
}

Vec operator*(const Matrix& a, const Vec& v) {
  if (a.cols_ != v.size()) throw InputError("matrix/vector shape mismatch");
  Vec r(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) {
      if (!a(i, j).is_zero() && !v[j].is_zero()) r[i] += a(i, j) * v[j];
    }
  }
  if (const Field* f = common_field(typed_field(a), typed_field(v)))
    for (auto& x : r) x = x.in(*f);
  return r;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& x : m.data_) x = -x;
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t k = 0; k < a.data_.size(); ++k)
    if (a.data_[k] != b.data_[k]) return false;
  return true;
}

std::string Matrix::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += ", ";
    s += xprod::str(row(i));
  }
  return s + "]";
}

// ---------------------------------------------------------------- elimination

Scalar det(const Matrix& m0) {
  if (!m0.square()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m0.rows();
  const Field& f = field_of(m0);
  if (n == 0) return f.one();
  Matrix m = m0.in(f);
  Scalar prev = f.one();
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m(p, k).is_zero()) ++p;
      if (p == n) return f.zero();
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = f.zero();
    }
    prev = m(k, k);
  }
  Scalar d = m(n - 1, n - 1);
  return negate ? -d : d;
}

Matrix rref(Matrix m, std::vector<std::size_t>* pivots) {
  const Field& f = field_of(m);
  m = m.in(f);
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Scalar inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Scalar factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!m(r, j).is_zero()) m(i, j) -= factor * m(r, j);
      }
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

std::size_t rank(const Matrix& m) {
  std::vector<std::size_t> piv;
  rref(m, &piv);
  return piv.size();
}

std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& rhs) {
  if (a.rows() != rhs.rows()) throw InputError("solve_linear: shape mismatch");
  Matrix aug(a.rows(), a.cols() + rhs.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, a.cols(), rhs);
  std::vector<std::size_t> piv;
  Matrix r = rref(aug, &piv);
  const Field& f = field_of(r);
  if (!piv.empty() && piv.back() >= a.cols()) return std::nullopt;
  Matrix x(a.cols(), rhs.cols(), f);
  for (std::size_t k = 0; k < piv.size(); ++k)
    for (std::size_t j = 0; j < rhs.cols(); ++j) x(piv[k], j) = r(k, a.cols() + j);
  return x;
}

std::optional<Vec> solve_linear(const Matrix& a, const Vec& rhs) {
  auto x = solve_linear(a, Matrix::from_cols({rhs}));
  if (!x) return std::nullopt;
  return x->col(0);
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.square()) throw InputError("inverse of a non-square matrix");
  const Field& f = field_of(m);
  if (rank(m) != m.rows()) return std::nullopt;
  return solve_linear(m, Matrix::identity(f, m.rows()));
}

std::vector<Vec> nullspace(const Matrix& a) {
  std::vector<std::size_t> piv;
  Matrix r = rref(a, &piv);
  const Field& f = field_of(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v = zero_vec(f, a.cols());
    v[free] = f.one();
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------- QuadSpace

QuadSpace::QuadSpace(Matrix gram) : gram_(std::move(gram)) {
  if (!gram_.is_symmetric()) throw InputError("Gram matrix must be square and symmetric");
  field_ = &field_of(gram_);
  gram_ = gram_.in(*field_);
  if (det(gram_).is_zero()) throw InputError("Gram matrix is degenerate");
}

QuadSpace QuadSpace::euclidean(const Field& f, std::size_t n) {
  return QuadSpace(Matrix::identity(f, n));
}

Scalar QuadSpace::bform(const Vec& u, const Vec& v) const {
  const std::size_t n = dim();
  if (u.size() != n || v.size() != n) throw InputError("bform: dimension mismatch");
  Scalar s = field_->zero();
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!v[j].is_zero() && !gram_(i, j).is_zero()) s += u[i] * gram_(i, j) * v[j];
    }
  }
  return s;
}

Scalar QuadSpace::gram_det(const std::vector<Vec>& vs, const std::vector<Vec>& ws) const {
  if (vs.size() != ws.size()) throw InputError("gram_det: length mismatch");
  Matrix g(vs.size(), ws.size(), *field_);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < ws.size(); ++j) g(i, j) = bform(vs[i], ws[j]);
  return det(g);
}

Matrix orthogonal_basis(const QuadSpace& b) {
  const std::size_t n = b.dim();
  const Field& f = b.field();
  std::vector<Vec> rest;
  for (std::size_t i = 0; i < n; ++i) rest.push_back(unit_vec(f, n, i));
  std::vector<Vec> out;
  while (!rest.empty()) {
    std::size_t pick = rest.size();
    for (std::size_t i = 0; i < rest.size() && pick == rest.size(); ++i)
      if (!b.bform(rest[i], rest[i]).is_zero()) pick = i;
    if (pick == rest.size()) {
      // All remaining vectors are isotropic; b(w_i + w_j, w_i + w_j) = 2 b(w_i, w_j).
      for (std::size_t i = 0; i < rest.size() && pick == rest.size(); ++i)
        for (std::size_t j = i + 1; j < rest.size(); ++j)
          if (!b.bform(rest[i], rest[j]).is_zero()) {
            rest[i] = add(rest[i], rest[j]);
            pick = i;
            break;
          }
      if (pick == rest.size()) throw Error("orthogonal_basis: form is degenerate");
    }
    const Vec v = rest[pick];
    rest.erase(rest.begin() + static_cast<long>(pick));
    const Scalar inv = b.bform(v, v).inverse();
    for (auto& u : rest) u = sub(u, scale(b.bform(u, v) * inv, v));
    out.push_back(v);
  }
  return Matrix::from_cols(out);
}

}  // namespace xprod
