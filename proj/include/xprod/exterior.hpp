#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "xprod/linalg.hpp"

namespace xprod {

/*
 * Homogeneous element of the exterior algebra over an n-dimensional space,
 * n <= 16. A blade e_{i1} ^ ... ^ e_{ip} with i1 < ... < ip is stored as the
 * bitmask of its indices; zero coefficients are never stored.
 */
class ExtElement {
 public:
  using Blade = std::uint32_t;
  static constexpr std::size_t kMaxDim = 16;

  ExtElement(std::size_t n, std::size_t degree);
  static ExtElement scalar(std::size_t n, const Scalar& s);
  static ExtElement vector(const Vec& v);
  /// coeff * e_{idx[0]} ^ e_{idx[1]} ^ ... in the given (possibly unsorted) order.
  static ExtElement blade(std::size_t n, const std::vector<std::size_t>& idx, const Scalar& coeff);

  std::size_t dim() const { return n_; }
  std::size_t degree() const { return p_; }
  const std::map<Blade, Scalar>& terms() const { return terms_; }
  Scalar coeff(Blade b) const;
  bool is_zero() const { return terms_.empty(); }

  void add_term(Blade b, const Scalar& c);
  ExtElement& operator+=(const ExtElement& o);
  friend bool operator==(const ExtElement& x, const ExtElement& y);

 private:
  std::size_t n_;
  std::size_t p_;
  std::map<Blade, Scalar> terms_;
};

/// Sign of e_a ^ e_b relative to the sorted blade a|b (0 when they overlap).
int wedge_sign(ExtElement::Blade a, ExtElement::Blade b);
std::vector<std::size_t> blade_indices(ExtElement::Blade b);

ExtElement wedge(const ExtElement& x, const ExtElement& y);

/// Bilinear extension of det(b(u_i, v_j)) to homogeneous elements; 0 across degrees.
Scalar ext_form(const QuadSpace& space, const ExtElement& x, const ExtElement& y);

/// omega = lambda e_1 ^ ... ^ e_n with lambda the canonical root of 1/det(B).
struct VolumeElement {
  Scalar lambda;
  ExtElement omega;
};

/// Fails with RequiresClosedField unless det(B) is a square.
VolumeElement volume_element(const QuadSpace& space);

/// mu with det(mu B) a square: det(B) for odd n, 1 when det(B) is already a
/// square; absent for even n with a non-square determinant.
std::optional<Scalar> disc_one_rescaling(const QuadSpace& space);

/// The unique *x of degree n-p with b(*x, y) = b(x ^ y, omega) for all y.
ExtElement hodge_star(const QuadSpace& space, const VolumeElement& vol, const ExtElement& x);

/*
 * The (n-1)-fold product *(v_1 ^ ... ^ v_{n-1}), evaluated from the n maximal
 * minors of the argument matrix. Never expands an order-(n-1) tensor.
 */
class StarEvaluator {
 public:
  explicit StarEvaluator(const QuadSpace& space);

  const QuadSpace& space() const { return space_; }
  const VolumeElement& volume() const { return vol_; }
  const Matrix& gram_inverse() const { return gram_inv_; }
  Vec operator()(const std::vector<Vec>& vs) const;

 private:
  QuadSpace space_;
  VolumeElement vol_;
  Matrix gram_inv_;
};

Vec star_cross(const QuadSpace& space, const VolumeElement& vol, const std::vector<Vec>& vs);

}  // namespace xprod
