#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xprod/crossprod.hpp"

namespace xprod {

/// phi(X(e_i1..e_ir)) = X(phi e_i1, ..., phi e_ir) on all basis tuples. Star
/// products use the equivalent test b(phi u, phi v) = det(phi) b(u, v).
bool is_automorphism(const Matrix& phi, const CrossProduct& x);

bool in_O(const Matrix& phi, const QuadSpace& b);
bool in_O_plus(const Matrix& phi, const QuadSpace& b);
/// b(phi u, phi v) = det(phi) b(u, v), phi invertible.
bool in_O_tilde(const Matrix& phi, const QuadSpace& b);

/// det(phi) for phi in O~(V, b); throws Error unless det^(n-2) = 1.
Scalar det_root_check(const Matrix& phi, const QuadSpace& b);

/// phi in O~ with det(phi) = r, built on a b-orthogonal basis as t on the
/// first n-1 vectors and t^(n-1) on the last, where t^2 = r. The field is
/// extended by sqrt(r) when r is not a square. Needs r^(n-2) = 1.
Matrix witness_with_det(const QuadSpace& b, const Scalar& r);

/// h(u, v) = b(u, v) id - b(J u, v) J, returned as the pair (b(u,v), -b(Ju,v)).
std::pair<Scalar, Scalar> hermitian_form(const Matrix& j, const QuadSpace& b, const Vec& u, const Vec& v);

/// phi J = J phi and phi preserves b; cross-checked against preservation of h.
bool is_unitary(const Matrix& phi, const Matrix& j, const QuadSpace& b);

struct LieBasis {
  std::vector<Matrix> basis;
  bool contains_identity = false;
  std::size_t dim() const { return basis.size(); }
};
/// { f : b(f u, v) + b(u, f v) = tr(f) b(u, v) }.
LieBasis lie_otilde(const QuadSpace& b);

/// The automorphism of C fixing 1 and acting as psi on C0; psi is given in the
/// coordinates of Cayley::c0_basis() and must preserve the C0 cross product.
Matrix extend_c0_automorphism(const Matrix& psi, const Field& f, CayleyBasis basis = CayleyBasis::Standard);

/// Phi(x) = [[0, l_x], [r_x, 0]] on C + C, with l, r the para-Cayley multiplications.
Matrix clifford_phi(const Cayley& c, const Vec& x);

/// (f0, f1, f2) with f0(x.y) = f1(x).y f2(y) for the para-Cayley product.
struct TriIsometry {
  Matrix f0, f1, f2;
};
/// The defining relation on all basis pairs.
bool is_related_triple(const Cayley& c, const TriIsometry& t);
/// f1(x.y) = f2(x).f0(y) and f2(x.y) = f0(x).f1(y) on all basis pairs.
bool cyclic_identities_hold(const Cayley& c, const TriIsometry& t);

/// f1 = conj f2 conj; f0 solved on products of basis pairs, then the relation,
/// f0(1) = 1 and membership in O+ are verified. Absent when any check fails.
std::optional<TriIsometry> complete_related_triple(const Cayley& c, const Matrix& f2);

struct SpinElement {
  Matrix clifford;  // prod Phi(e0 . x_i) = diag(prod L_x, prod R_x)
  TriIsometry triple;  // (chi, prod R_x, prod L_x)
};
/// xs: an even number of elements of C0 whose norms multiply to 1.
SpinElement spin_element_from_vectors(const Cayley& c, const std::vector<Vec>& xs);

enum class OrbitTarget { UnitSphere, Isotropic, Pair };
OrbitTarget parse_orbit_target(const std::string& s);
std::string to_string(OrbitTarget t);

struct OrbitCensus {
  std::uint64_t orbit_size = 0;
  std::uint64_t target_size = 0;
  bool equal = false;
  std::size_t generators = 0;
};
/// BFS orbit of 1, e1 or (e1, e2) in the split Cayley algebra over F_q (q <= 5;
/// pairs only for q = 3) under products L_a L_b of seeded random C0 elements,
/// against an exhaustive enumeration of the target set.
OrbitCensus orbit_census(const Field& f, OrbitTarget target, std::uint64_t seed = 0x5EED);

}  // namespace xprod
