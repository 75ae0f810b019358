#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xprod/error.hpp"

namespace xprod {

using IntVec = std::vector<mpz_class>;
using IntMatrix = std::vector<IntVec>;

/// Smith normal form D = U A V with U, V unimodular; only V and V^-1 are kept.
struct SmithForm {
  IntVec diagonal;  // nonzero diagonal entries d_1 | d_2 | ..., all positive
  IntMatrix v;      // cols x cols
  IntMatrix v_inv;
};
SmithForm smith_normal_form(const IntMatrix& a, std::size_t cols);

class AbGroup;
struct GroupData;

/// An element in normal-form coordinates: torsion residues first, then free integers.
class GroupElem {
 public:
  GroupElem() = default;

  AbGroup group() const;
  const IntVec& coords() const { return coords_; }
  bool is_identity() const;

  GroupElem operator*(const GroupElem& o) const;
  GroupElem inverse() const;
  GroupElem pow(const mpz_class& k) const;
  /// Order, or nullopt for elements of infinite order.
  std::optional<mpz_class> order() const;

  bool operator==(const GroupElem& o) const;
  bool operator!=(const GroupElem& o) const { return !(*this == o); }
  /// Lexicographic on coordinates; elements of one group only.
  bool operator<(const GroupElem& o) const;

  /// "(1,0|3)": torsion residues, then free coordinates after '|'.
  std::string str() const;

 private:
  friend class AbGroup;
  std::shared_ptr<const GroupData> owner_;
  IntVec coords_;
};

/*
 * Finitely generated abelian group <g_1..g_m | relations>, each relation an
 * integer row r meaning sum_j r_j g_j = 0 (written additively). The Smith
 * form is computed once; elements carry normal-form coordinates.
 */
class AbGroup {
 public:
  AbGroup();  // trivial group
  static AbGroup from_presentation(std::size_t m, const IntMatrix& relations, std::vector<std::string> names = {});
  static AbGroup free(std::size_t rank);
  /// Z/d_1 x ... x Z/d_k x Z^rank (d = 0 entries count as free factors).
  static AbGroup from_type(std::size_t rank, const std::vector<long>& cyclic);
  static AbGroup elementary2(std::size_t rank) { return from_type(0, std::vector<long>(rank, 2)); }

  std::size_t generator_count() const;
  const std::vector<std::string>& generator_names() const;
  const IntMatrix& relations() const;

  std::size_t rank() const;
  /// Invariant factors d_1 | d_2 | ... (all > 1).
  const IntVec& torsion() const;
  bool is_finite() const { return rank() == 0; }
  /// Number of elements (finite groups only).
  mpz_class order() const;
  /// "Z^2 x Z/4", "Z/2 x Z/4", "1" for the trivial group.
  std::string type_str() const;
  bool isomorphic(const AbGroup& o) const { return rank() == o.rank() && torsion() == o.torsion(); }

  GroupElem identity() const;
  GroupElem generator(std::size_t i) const;
  /// The element sum_j exps[j] g_j.
  GroupElem element(const IntVec& exps) const;
  GroupElem element(const std::vector<long>& exps) const;
  /// Element with the given normal-form coordinates (torsion entries are reduced).
  GroupElem from_coords(IntVec coords) const;
  /// Exponents on the presentation generators of some preimage.
  IntVec exponents(const GroupElem& g) const;

  /// All elements of a finite group, in coordinate order.
  std::vector<GroupElem> elements() const;

  bool operator==(const AbGroup& o) const { return data_ == o.data_; }
  bool operator!=(const AbGroup& o) const { return data_ != o.data_; }

 private:
  friend class GroupElem;
  explicit AbGroup(std::shared_ptr<const GroupData> d) : data_(std::move(d)) {}
  std::shared_ptr<const GroupData> data_;
};

struct GroupData {
  std::size_t m = 0;
  std::vector<std::string> names;
  IntMatrix relations;
  SmithForm snf;
  IntVec torsion;             // invariant factors > 1
  std::size_t first_torsion = 0;  // SNF column of torsion()[0]
  std::size_t rank = 0;
};

/// The subgroup generated by `gens` inside a finite group, as a sorted element list.
std::vector<GroupElem> generated_subgroup(const AbGroup& g, const std::vector<GroupElem>& gens);

/// A homomorphism given by generator images; built only if all relations hold.
class GroupHom {
 public:
  static std::optional<GroupHom> make(const AbGroup& src, const AbGroup& dst, std::vector<GroupElem> images);

  const AbGroup& source() const { return src_; }
  const AbGroup& target() const { return dst_; }
  const std::vector<GroupElem>& images() const { return images_; }
  GroupElem operator()(const GroupElem& g) const;

 private:
  GroupHom(AbGroup s, AbGroup d, std::vector<GroupElem> im)
      : src_(std::move(s)), dst_(std::move(d)), images_(std::move(im)) {}
  AbGroup src_, dst_;
  std::vector<GroupElem> images_;
};

}  // namespace xprod
