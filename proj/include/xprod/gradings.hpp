#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xprod/abgroup.hpp"
#include "xprod/crossprod.hpp"

namespace xprod {

/// Which structure a grading lives on.
enum class GradedStructure { C0X, X1, TripleC, Star, OneFold };
std::string to_string(GradedStructure s);
GradedStructure parse_graded_structure(const std::string& s);  // "c0x", "x1", "3c", "star", "onefold"

/*
 * A grading stored as degrees on a homogeneous basis. Components are the
 * spans of the basis vectors sharing a degree.
 */
class Grading {
 public:
  /// Throws InputError unless the vectors form a basis and the degrees lie in `group`.
  Grading(GradedStructure structure, CrossProduct product, std::optional<QuadSpace> form, AbGroup group,
          std::vector<Vec> basis, std::vector<GroupElem> degrees, CayleyBasis cayley_basis = CayleyBasis::Standard);

  GradedStructure structure() const { return structure_; }
  const CrossProduct& product() const { return product_; }
  const std::optional<QuadSpace>& form() const { return form_; }
  const AbGroup& group() const { return group_; }
  CayleyBasis cayley_basis() const { return cayley_basis_; }
  const Field& field() const { return product_.field(); }
  std::size_t dim() const { return basis_.size(); }

  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<GroupElem>& degrees() const { return degrees_; }

  /// Distinct degrees, sorted.
  std::vector<GroupElem> support() const;
  /// Indices of the basis vectors of degree g.
  std::vector<std::size_t> component(const GroupElem& g) const;
  std::size_t component_dim(const GroupElem& g) const { return component(g).size(); }

  /// Same structure and basis with new degrees in `target`.
  Grading with_degrees(AbGroup target, std::vector<GroupElem> degrees) const;

 private:
  GradedStructure structure_;
  CrossProduct product_;
  std::optional<QuadSpace> form_;
  AbGroup group_;
  std::vector<Vec> basis_;
  std::vector<GroupElem> degrees_;
  CayleyBasis cayley_basis_;
};

struct GradingReport {
  bool pass = true;
  std::size_t checked = 0;
  std::size_t violations = 0;
  /// The first few violating tuples, e.g. "(u1,e1,u2) -> degree (..) expected (..)".
  std::vector<std::string> witnesses;
};
/// X(V_g1, ..., V_gr) inside V_{g1...gr} on all homogeneous basis r-tuples.
GradingReport verify_grading(const Grading& g);

struct FormCompatibility {
  bool compatible = false;  // h = e
  GroupElem h;              // product of g^dim(V_g)
};
/// b(V_g1, V_g2) = 0 unless g1 g2 = h; throws Error with a witness pair when that fails.
FormCompatibility form_compatibility(const Grading& g, const QuadSpace& b);
/// For every g in the support: b restricted to V_g is nondegenerate when g^2 = h, zero otherwise.
bool component_dichotomy_holds(const Grading& g, const QuadSpace& b, const GroupElem& h);

/// g -> dim V_g with finite support.
class DeltaMap {
 public:
  DeltaMap(AbGroup group, std::vector<std::pair<GroupElem, std::size_t>> values);

  const AbGroup& group() const { return group_; }
  /// Support entries (value > 0), sorted by element.
  const std::vector<std::pair<GroupElem, std::size_t>>& entries() const { return values_; }
  std::size_t operator()(const GroupElem& g) const;
  std::size_t total() const;
  /// prod g^delta(g)
  GroupElem h() const;
  /// Throws InputError unless delta(g) = delta(g^-1 h) for all g.
  void validate() const;
  bool operator==(const DeltaMap& o) const;

 private:
  AbGroup group_;
  std::vector<std::pair<GroupElem, std::size_t>> values_;
};

DeltaMap delta_of(const Grading& g);
/// The (n-1)-fold product on F^n with the block Gram matrix of Gamma(G, delta):
/// orthonormal vectors on components with g^2 = h, hyperbolic pairs between V_g and V_{g^-1 h}.
Grading build_gamma_delta(const DeltaMap& delta, const Field& f);
/// Isomorphism of Gamma(G, delta1) and Gamma(G, delta2): equality of the maps.
bool n1_isomorphic(const DeltaMap& a, const DeltaMap& b);

/// U = <x1..xp, y1, z1, .., yq, zq | x_i^2 = y_j z_j = x1...zq> and Gamma(U, delta_U).
struct FineN1 {
  AbGroup universal;
  Grading grading;
  std::size_t p, q;
};
FineN1 fine_n1(std::size_t p, std::size_t q, std::size_t n, const Field& f);

/// Every homogeneous component is one-dimensional.
bool is_fine(const Grading& g);

// ---------------------------------------------------------------- (8,3) on {xyz}

/// Z^3-grading on (C, {...}): deg u_i = eps_i = -deg v_i, deg e2 = (1,1,1) = -deg e1.
Grading cartan_grading(const Field& f);
/// The coarsening of the Cartan grading by alpha(eps_i) = images[i].
Grading cartan_coarsening(const AbGroup& g, const std::vector<GroupElem>& images, const Field& f);
/// (Z/2)^4-grading: deg 1 = (1,0,0,0), deg w_i = (1,0,0,0) + e_i for i = 1..3.
Grading cd_grading(const Field& f);
/// deg w1, w2, w3 = h1, h2, h3 generating a rank-3 elementary 2-subgroup.
Grading gamma_GH(const AbGroup& g, const std::vector<GroupElem>& h_gens, const Field& f);
/// All degrees multiplied by h, h^2 = e.
Grading shift(const Grading& g, const GroupElem& h);
/// shift(gamma_GH(G, K), h) with K index 2 in H (rank 4) and h in H \ K.
Grading gamma_GHK(const AbGroup& g, const std::vector<GroupElem>& h_gens, const std::vector<GroupElem>& k_gens,
                  const GroupElem& h, const Field& f);

struct Classification83 {
  int family = 0;                 // 1: Cartan coarsening, 2: Gamma(G,H), 3: Gamma(G,H,K)
  std::vector<GroupElem> alpha;   // family 1: images of eps_1..eps_3
  std::vector<GroupElem> h_sub;   // families 2, 3 (sorted)
  std::vector<GroupElem> k_sub;   // family 3 (sorted)
  std::string str() const;
};
/// The decision procedure of the classification: an isotropic homogeneous vector
/// leads to a Cartan coarsening; otherwise the support decides between H and (H, K).
Classification83 classify_83(const Grading& g);
/// Family-wise comparison; family 1 searches the 48 signed permutations omega for alpha' = alpha omega.
bool iso_83(const Classification83& a, const Classification83& b);
bool iso_83(const Grading& a, const Grading& b);

// ---------------------------------------------------------------- Weyl groups

struct FineGradingId {
  enum Kind { N1, CartanB3, CD, G2Cartan, G2Z2, OneFold } kind;
  std::size_t p = 0, q = 0, s = 0;
};
/// "n1:p,q", "cartan", "cd", "g2-cartan", "g2-z2", "onefold:s".
FineGradingId parse_fine_grading_id(const std::string& s);
std::string to_string(const FineGradingId& id);
mpz_class weyl_order(const FineGradingId& id);

struct WeylSearch {
  std::uint64_t self_equivalences = 0;  // signed permutations preserving {...}
  std::uint64_t weyl_order = 0;         // distinct permutations of the support
};
/// Signed permutations of the CD basis preserving {xyz}; pruned depth-first search split over threads.
WeylSearch weyl_search_cd(unsigned threads = 4);
/// Permutations of the homogeneous basis of Gamma(U, delta_U) realized by some t * P in O~,
/// each verified as an automorphism of the (n-1)-fold product.
WeylSearch weyl_search_n1(std::size_t p, std::size_t q, const Field& f);

}  // namespace xprod
