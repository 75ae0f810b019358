#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "xprod/scalars.hpp"

namespace xprod {

using Vec = std::vector<Scalar>;

Vec zero_vec(const Field& f, std::size_t n);
Vec unit_vec(const Field& f, std::size_t n, std::size_t i);
Vec add(const Vec& x, const Vec& y);
Vec sub(const Vec& x, const Vec& y);
Vec scale(const Scalar& s, const Vec& x);
Scalar dot(const Vec& x, const Vec& y);
bool is_zero(const Vec& x);
Vec vec_in(const Vec& x, const Field& f);
std::string str(const Vec& x);

/// Dense row-major matrix of scalars.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, const Field& f);
  static Matrix identity(const Field& f, std::size_t n);
  static Matrix diagonal(const Vec& d);
  static Matrix from_rows(const std::vector<Vec>& rows);
  static Matrix from_cols(const std::vector<Vec>& cols);
  /// Rows given as small integers; handy for tests and fixed tables.
  static Matrix from_ints(const Field& f, const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  void set_col(std::size_t j, const Vec& v);

  Matrix transpose() const;
  Matrix in(const Field& f) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);

  Scalar trace() const;
  bool is_zero() const;
  bool is_symmetric() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, Matrix a);
  friend Vec operator*(const Matrix& a, const Vec& v);
  Matrix operator-() const;
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Determinant; fraction-free Bareiss elimination (exact division in any field).
Scalar det(const Matrix& m);

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
Matrix rref(Matrix m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const Matrix& m);

std::optional<Vec> solve_linear(const Matrix& a, const Vec& rhs);
/// Solves A X = B column by column; absent if any column is inconsistent.
std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& rhs);
std::optional<Matrix> inverse(const Matrix& m);

/// Kernel basis, one vector per free column, with 1 in that free column and 0
/// in the other free columns (reduced echelon normalization).
std::vector<Vec> nullspace(const Matrix& a);

/// A nondegenerate symmetric bilinear form b(u, v) = u^T B v.
class QuadSpace {
 public:
  explicit QuadSpace(Matrix gram);
  static QuadSpace euclidean(const Field& f, std::size_t n);

  std::size_t dim() const { return gram_.rows(); }
  const Matrix& gram() const { return gram_; }
  const Field& field() const { return *field_; }

  Scalar bform(const Vec& u, const Vec& v) const;
  /// det(b(vs[i], ws[j])).
  Scalar gram_det(const std::vector<Vec>& vs, const std::vector<Vec>& ws) const;

  QuadSpace scaled(const Scalar& mu) const { return QuadSpace(mu * gram_); }
  QuadSpace in(const Field& f) const { return QuadSpace(gram_.in(f)); }

 private:
  Matrix gram_;
  const Field* field_ = nullptr;
};

/// Columns form a b-orthogonal basis (pivoted Gram-Schmidt; needs char != 2).
Matrix orthogonal_basis(const QuadSpace& b);

/// Common field of the typed entries (nullptr when all are untyped literals).
const Field* typed_field(const Matrix& m);
const Field* typed_field(const Vec& v);
/// As typed_field, defaulting to Q.
const Field& field_of(const Matrix& m);
const Field& field_of(const Vec& v);

}  // namespace xprod
