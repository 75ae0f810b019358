#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xprod/cayley.hpp"
#include "xprod/exterior.hpp"

namespace xprod {

enum class CrossKind { Tensor, Star };

/*
 * An r-fold multilinear map V^r -> V on an n-dimensional space, optionally
 * with the bilinear form it is a cross product relative to.
 *
 * Tensor payload: c[((i1*n + i2)*n + ...)*n + k] is the e_k coordinate of
 * X(e_i1, ..., e_ir). Star payload: evaluated on demand from minors, so
 * arity n-1 never materializes n^n entries.
 */
class CrossProduct {
 public:
  static CrossProduct tensor(std::size_t r, std::size_t n, const Field& f, std::vector<Scalar> data,
                             std::optional<QuadSpace> b = std::nullopt);
  /// Tabulates a multilinear map by evaluating it on all basis r-tuples.
  static CrossProduct from_map(std::size_t r, std::size_t n, const Field& f,
                               const std::function<Vec(const std::vector<Vec>&)>& map,
                               std::optional<QuadSpace> b = std::nullopt);
  static CrossProduct star(const QuadSpace& b);

  std::size_t arity() const { return r_; }
  std::size_t dim() const { return n_; }
  CrossKind kind() const { return star_ ? CrossKind::Star : CrossKind::Tensor; }
  const Field& field() const { return *field_; }
  const std::optional<QuadSpace>& form() const { return form_; }
  CrossProduct with_form(const QuadSpace& b) const;

  /// Tensor entries (throws for star payloads).
  const std::vector<Scalar>& tensor_data() const;

  Vec eval(const std::vector<Vec>& vs) const;
  Vec eval_basis(const std::vector<std::size_t>& idx) const;

  /// Values on all n^r basis tuples in tensor order (computed once per object).
  const std::vector<Vec>& basis_table(unsigned threads = 1) const;

 private:
  CrossProduct() = default;

  std::size_t r_ = 0;
  std::size_t n_ = 0;
  const Field* field_ = nullptr;
  std::vector<Scalar> data_;
  std::shared_ptr<const StarEvaluator> star_;
  std::optional<QuadSpace> form_;
  std::shared_ptr<std::vector<Vec>> table_ = std::make_shared<std::vector<Vec>>();
};

struct VerifyOptions {
  std::uint64_t seed = 0x5EED;
  unsigned threads = 1;
  std::size_t samples = 1000;
  /// Exhaustive basis sweeps are used while the tuple count stays below this.
  std::size_t exhaustive_limit = 3'000'000;
};

struct AxiomCheck {
  bool pass = true;
  bool exhaustive = true;
  std::size_t checked = 0;
  std::string witness;
};

struct AxiomReport {
  AxiomCheck a1;  // b(X(v..), v_i) = 0
  AxiomCheck a2;  // b(X(v..), X(v..)) = det(b(v_i, v_j))
  bool pass() const { return a1.pass && a2.pass; }
};

AxiomReport verify_axioms(const CrossProduct& x, const QuadSpace& b, const VerifyOptions& opt = {});

/// Result of build_one_fold: J as a 1-fold product plus a form it is admissible for.
struct OneFold {
  CrossProduct product;
  QuadSpace form;
};

/// J with J^2 = -id and tr J = 0 (n even). With sqrt(-1) the eigenlines are paired
/// hyperbolically; otherwise {v, Jv} pairs are declared orthonormal.
OneFold build_one_fold(const Matrix& j, const std::optional<QuadSpace>& space = std::nullopt);
/// The block-rotation J on F^{2s}: J(e_{2k}) = e_{2k+1}, J(e_{2k+1}) = -e_{2k}.
Matrix standard_complex_structure(const Field& f, std::size_t s);

CrossProduct build_star(const QuadSpace& b);
/// The 2-fold product on C0 in the basis Cayley::c0_basis(), with b_n attached.
CrossProduct build_c0(const Field& f, CayleyBasis basis = CayleyBasis::Standard);
/// alpha * X_eps on C, with alpha * b_n attached.
CrossProduct build_three_fold(int eps, const Scalar& alpha, const Field& f,
                              CayleyBasis basis = CayleyBasis::Standard);
/// The 3C triple product {xyz} = (x conj(y)) z as a trilinear map (no form attached).
CrossProduct build_triple_3c(const Field& f, CayleyBasis basis = CayleyBasis::Standard);
/// x conj(y) z - z conj(y) x on the quaternions, relative to the polar form.
CrossProduct build_quaternion(const Field& f);

/// Checks the Gram/epsilon identity for a 3-fold product on all n^6 basis tuples:
/// b(X(u), X(v)) = det(b(u_i, v_j)) + eps * sum_{sigma, tau even} b(u_s1, v_t1) b(u_s2, X(u_s3, v_t2, v_t3)).
struct EpsilonReport {
  bool pass = true;
  std::size_t checked = 0;
  std::string witness;
};
EpsilonReport satisfies_epsilon_identity(const CrossProduct& x, const QuadSpace& b, int eps, unsigned threads = 1);

struct AdmissibleForms {
  /// Dimension of the symmetric B' solving the linear (polarized) constraints.
  std::size_t linear_dim = 0;
  bool reference_in_solution = false;
  /// Admissible scalings mu (B' = mu * B_ref) that pass full verification.
  std::vector<Scalar> mus;
  std::vector<Matrix> forms;
  std::string note;
};

/// Needs X.form() as the reference form.
AdmissibleForms admissible_forms(const CrossProduct& x, const VerifyOptions& opt = {});

}  // namespace xprod
