#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "xprod/linalg.hpp"

namespace xprod {

enum class CayleyBasis { Standard, CD };

std::string to_string(CayleyBasis b);
CayleyBasis parse_cayley_basis(const std::string& tag);

/*
 * The Cayley algebra in one of two fixed bases, over a given field.
 *
 *   standard: 0 e1, 1 e2, 2 u1, 3 u2, 4 u3, 5 v1, 6 v2, 7 v3   (split; unit e1+e2)
 *   cd:       0 1,  1..7 w1..w7, w_i^2 = -1, w_i w_{i+1} = w_{i+3} (mod 7)
 *
 * Products of basis elements are 0 or a signed basis element in both tables,
 * so the structure constants are stored as (index, sign) pairs.
 */
class Cayley {
 public:
  static constexpr std::size_t kDim = 8;

  Cayley(const Field& f, CayleyBasis basis);

  const Field& field() const { return *field_; }
  CayleyBasis basis() const { return basis_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  Vec zero() const { return zero_vec(*field_, kDim); }
  Vec basis_vec(std::size_t i) const { return unit_vec(*field_, kDim, i); }
  Vec unit() const;
  /// Parses "w1", "-u2", "e1+e2" style sums of signed basis labels.
  Vec parse(const std::string& text) const;
  std::string str(const Vec& x) const;

  /// e_i e_j = sign * e_index (sign 0 means the product is zero).
  struct Entry {
    int index;
    int sign;
  };
  Entry table(std::size_t i, std::size_t j) const { return table_[i][j]; }
  /// Gram matrix of the polar form n(x,y) = n(x+y) - n(x) - n(y) (integer entries).
  int polar_gram(std::size_t i, std::size_t j) const { return polar_[i][j]; }

  Vec mul(const Vec& x, const Vec& y) const;
  Scalar norm(const Vec& x) const;
  Scalar polar(const Vec& x, const Vec& y) const;
  /// b_n = polar / 2.
  Scalar bn(const Vec& x, const Vec& y) const;
  Vec conj(const Vec& x) const;
  bool in_c0(const Vec& x) const { return polar(x, unit()).is_zero(); }

  Vec para_mul(const Vec& x, const Vec& y) const;
  /// x*y + b_n(x,y) 1 for x, y in C0.
  Vec c0_cross(const Vec& x, const Vec& y) const;
  /// {xyz} = (x conj(y)) z.
  Vec triple_3c(const Vec& x, const Vec& y, const Vec& z) const;
  /// Type I (eps = +1) or type II (eps = -1) 3-fold cross product.
  Vec three_fold(int eps, const Vec& x, const Vec& y, const Vec& z) const;

  Matrix left_mul(const Vec& x) const;
  Matrix right_mul(const Vec& x) const;
  /// Matrices of y -> x.y and y -> y.x for the para-Cayley product.
  Matrix para_left(const Vec& x) const;
  Matrix para_right(const Vec& x) const;
  Matrix conj_matrix() const;
  QuadSpace bn_space() const;
  QuadSpace polar_space() const;

  /// Basis of C0 used for the 7-dimensional cross product: e1-e2, u1..v3 or w1..w7.
  std::vector<Vec> c0_basis() const;

  /// Columns are the CD basis vectors written in the standard basis
  /// (w1 = i(e1-e2), w2 = u1+v1, ...). Requires sqrt(-1) in the field.
  static Matrix cd_to_standard(const Field& f);

 private:
  const Field* field_;
  CayleyBasis basis_;
  std::array<std::array<Entry, kDim>, kDim> table_{};
  std::array<std::array<int, kDim>, kDim> polar_{};
  std::array<std::string, kDim> labels_;
};

/// Quaternions as span{1, w1, w2, w4} inside the CD table; coordinates in that order.
class Quaternions {
 public:
  static constexpr std::size_t kDim = 4;
  static constexpr std::array<std::size_t, 4> kEmbed = {0, 1, 2, 4};

  explicit Quaternions(const Field& f) : cd_(f, CayleyBasis::CD) {}
  const Field& field() const { return cd_.field(); }
  const Cayley& octonions() const { return cd_; }

  Vec embed(const Vec& q) const;
  Vec restrict(const Vec& x) const;
  Vec mul(const Vec& x, const Vec& y) const;
  Vec conj(const Vec& x) const;
  Scalar norm(const Vec& x) const;
  Scalar polar(const Vec& x, const Vec& y) const;
  /// x conj(y) z - z conj(y) x.
  Vec cross(const Vec& x, const Vec& y, const Vec& z) const;
  /// Polar form n(.,.) on the quaternions, the form the cross product is relative to.
  QuadSpace polar_space() const;

 private:
  Cayley cd_;
};

}  // namespace xprod
