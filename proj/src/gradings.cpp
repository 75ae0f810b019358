#include "xprod/gradings.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "xprod/autgrp.hpp"
#include "xprod/parallel.hpp"

namespace xprod {

std::string to_string(GradedStructure s) {
  switch (s) {
    case GradedStructure::C0X:
      return "c0x";
    case GradedStructure::X1:
      return "x1";
    case GradedStructure::TripleC:
      return "3c";
    case GradedStructure::Star:
      return "star";
    case GradedStructure::OneFold:
      return "onefold";
  }
  return "?";
}

GradedStructure parse_graded_structure(const std::string& s) {
  if (s == "c0x") return GradedStructure::C0X;
  if (s == "x1") return GradedStructure::X1;
  if (s == "3c") return GradedStructure::TripleC;
  if (s == "star") return GradedStructure::Star;
  if (s == "onefold") return GradedStructure::OneFold;
  throw InputError("unknown graded structure '" + s + "' (c0x, x1, 3c, star, onefold)");
}

// ---------------------------------------------------------------- Grading

Grading::Grading(GradedStructure structure, CrossProduct product, std::optional<QuadSpace> form, AbGroup group,
                 std::vector<Vec> basis, std::vector<GroupElem> degrees, CayleyBasis cayley_basis)
    : structure_(structure),
      product_(std::move(product)),
      form_(std::move(form)),
      group_(std::move(group)),
      basis_(std::move(basis)),
      degrees_(std::move(degrees)),
      cayley_basis_(cayley_basis) {
  const std::size_t n = product_.dim();
  if (basis_.size() != n || degrees_.size() != n)
    throw InputError("grading needs " + std::to_string(n) + " homogeneous vectors with one degree each");
  for (const auto& v : basis_)
    if (v.size() != n) throw InputError("homogeneous vector has the wrong length");
  for (const auto& d : degrees_)
    if (d.group() != group_) throw InputError("degree does not belong to the grading group");
  if (det(Matrix::from_cols(basis_)).is_zero()) throw InputError("homogeneous vectors do not form a basis");
}

std::vector<GroupElem> Grading::support() const {
  std::vector<GroupElem> s = degrees_;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::vector<std::size_t> Grading::component(const GroupElem& g) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < degrees_.size(); ++i)
    if (degrees_[i] == g) idx.push_back(i);
  return idx;
}

Grading Grading::with_degrees(AbGroup target, std::vector<GroupElem> degrees) const {
  return Grading(structure_, product_, form_, std::move(target), basis_, std::move(degrees), cayley_basis_);
}

GradingReport verify_grading(const Grading& g) {
  const std::size_t n = g.dim(), r = g.product().arity();
  const Matrix p_inv = *inverse(Matrix::from_cols(g.basis()));
  GradingReport rep;
  std::size_t total = 1;
  for (std::size_t i = 0; i < r; ++i) total *= n;
  std::vector<std::size_t> d(r);
  for (std::size_t t = 0; t < total; ++t) {
    for (std::size_t k = r, rest = t; k-- > 0; rest /= n) d[k] = rest % n;
    std::vector<Vec> args;
    GroupElem expected = g.group().identity();
    for (std::size_t i : d) {
      args.push_back(g.basis()[i]);
      expected = expected * g.degrees()[i];
    }
    const Vec coords = p_inv * g.product().eval(args);
    ++rep.checked;
    for (std::size_t k = 0; k < n; ++k) {
      if (coords[k].is_zero() || g.degrees()[k] == expected) continue;
      ++rep.violations;
      if (rep.witnesses.size() < 5) {
        std::string s = "(";
        for (std::size_t i = 0; i < r; ++i) s += (i ? ",b" : "b") + std::to_string(d[i]);
        rep.witnesses.push_back(s + ") has a b" + std::to_string(k) + " term of degree " + g.degrees()[k].str() +
                                ", expected " + expected.str());
      }
      break;
    }
  }
  rep.pass = rep.violations == 0;
  return rep;
}

namespace {

GroupElem degree_product(const Grading& g) {
  GroupElem h = g.group().identity();
  for (const auto& d : g.degrees()) h = h * d;
  return h;
}

}  // namespace

FormCompatibility form_compatibility(const Grading& g, const QuadSpace& b) {
  if (b.dim() != g.dim()) throw InputError("form has the wrong dimension");
  const GroupElem h = degree_product(g);
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i; j < g.dim(); ++j) {
      if (b.bform(g.basis()[i], g.basis()[j]).is_zero()) continue;
      if (g.degrees()[i] * g.degrees()[j] != h)
        throw Error("pairing fails: b(b" + std::to_string(i) + ", b" + std::to_string(j) + ") != 0 with degrees " +
                    g.degrees()[i].str() + " and " + g.degrees()[j].str() + ", h = " + h.str());
    }
  return {h.is_identity(), h};
}

bool component_dichotomy_holds(const Grading& g, const QuadSpace& b, const GroupElem& h) {
  for (const auto& s : g.support()) {
    const auto idx = g.component(s);
    Matrix block(idx.size(), idx.size(), g.field());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) block(i, j) = b.bform(g.basis()[idx[i]], g.basis()[idx[j]]);
    const bool nondegenerate = !det(block).is_zero();
    if ((s * s == h) ? !nondegenerate : !block.is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------- delta maps

DeltaMap::DeltaMap(AbGroup group, std::vector<std::pair<GroupElem, std::size_t>> values) : group_(std::move(group)) {
  std::map<GroupElem, std::size_t> merged;
  for (auto& [g, d] : values) {
    if (g.group() != group_) throw InputError("delta map element belongs to another group");
    merged[g] += d;
  }
  for (auto& [g, d] : merged)
    if (d > 0) values_.emplace_back(g, d);
}

std::size_t DeltaMap::operator()(const GroupElem& g) const {
  for (const auto& [x, d] : values_)
    if (x == g) return d;
  return 0;
}

std::size_t DeltaMap::total() const {
  std::size_t s = 0;
  for (const auto& e : values_) s += e.second;
  return s;
}

GroupElem DeltaMap::h() const {
  GroupElem h = group_.identity();
  for (const auto& [g, d] : values_) h = h * g.pow(static_cast<long>(d));
  return h;
}

void DeltaMap::validate() const {
  const GroupElem hh = h();
  for (const auto& [g, d] : values_)
    if ((*this)(g.inverse() * hh) != d)
      throw InputError("delta(g) != delta(g^-1 h) at g = " + g.str() + " with h = " + hh.str());
}

bool DeltaMap::operator==(const DeltaMap& o) const { return group_ == o.group_ && values_ == o.values_; }

DeltaMap delta_of(const Grading& g) {
  std::vector<std::pair<GroupElem, std::size_t>> v;
  for (const auto& d : g.degrees()) v.emplace_back(d, 1);
  return DeltaMap(g.group(), v);
}

namespace {

// Orthonormal vectors of the given degrees, then hyperbolic pairs (v_j, w_j), on F^n.
Grading n1_from_blocks(const AbGroup& group, const std::vector<GroupElem>& single,
                       const std::vector<std::pair<std::vector<GroupElem>, std::vector<GroupElem>>>& pairs,
                       const Field& f) {
  std::vector<GroupElem> degrees = single;
  std::vector<std::pair<std::size_t, std::size_t>> hyperbolic;
  for (const auto& [vs, ws] : pairs) {
    const std::size_t base = degrees.size();
    degrees.insert(degrees.end(), vs.begin(), vs.end());
    degrees.insert(degrees.end(), ws.begin(), ws.end());
    for (std::size_t k = 0; k < vs.size(); ++k) hyperbolic.emplace_back(base + k, base + vs.size() + k);
  }
  const std::size_t n = degrees.size();
  if (n < 2) throw InputError("the (n-1)-fold product needs n >= 2");
  Matrix gram(n, n, f);
  for (std::size_t i = 0; i < single.size(); ++i) gram(i, i) = f.one();
  for (const auto& [a, b] : hyperbolic) gram(a, b) = gram(b, a) = f.one();
  const QuadSpace b(gram);
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back(unit_vec(f, n, i));
  if (n > 2) return Grading(GradedStructure::Star, build_star(b), b, group, basis, degrees);
  // n = 2: b(J v, w) = lambda det(v, w) with lambda^2 = 1 / det(B).
  const auto lambda = f.sqrt(det(gram).inverse());
  if (!lambda) throw RequiresClosedField("the 1-fold product on this plane needs sqrt(1/det B) in " + f.name());
  const Matrix rot = Matrix::from_ints(f, {{0, -1}, {1, 0}});
  const Matrix j = *lambda * (*inverse(gram) * rot);
  std::vector<Scalar> data;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) data.push_back(j(k, i));
  return Grading(GradedStructure::Star, CrossProduct::tensor(1, 2, f, data, b), b, group, basis, degrees);
}

}  // namespace

Grading build_gamma_delta(const DeltaMap& delta, const Field& f) {
  delta.validate();
  const GroupElem h = delta.h();
  std::vector<GroupElem> single;
  std::vector<std::pair<std::vector<GroupElem>, std::vector<GroupElem>>> pairs;
  for (const auto& [g, d] : delta.entries()) {
    const GroupElem partner = g.inverse() * h;
    if (partner == g) {
      single.insert(single.end(), d, g);
    } else if (g < partner) {
      pairs.emplace_back(std::vector<GroupElem>(d, g), std::vector<GroupElem>(d, partner));
    }
  }
  return n1_from_blocks(delta.group(), single, pairs, f);
}

bool n1_isomorphic(const DeltaMap& a, const DeltaMap& b) {
  if (a.group() != b.group()) throw InputError("delta maps on different groups");
  return a == b;
}

FineN1 fine_n1(std::size_t p, std::size_t q, std::size_t n, const Field& f) {
  if (p + 2 * q != n || n < 3) throw InputError("fine_n1 needs p + 2q = n >= 3");
  const std::size_t m = p + 2 * q;
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= p; ++i) names.push_back("x" + std::to_string(i));
  for (std::size_t j = 1; j <= q; ++j) {
    names.push_back("y" + std::to_string(j));
    names.push_back("z" + std::to_string(j));
  }
  // x_i^2 = y_j z_j = x1...zq, as consecutive differences of the words.
  std::vector<IntVec> words;
  for (std::size_t i = 0; i < p; ++i) {
    IntVec w(m, 0);
    w[i] = 2;
    words.push_back(w);
  }
  for (std::size_t j = 0; j < q; ++j) {
    IntVec w(m, 0);
    w[p + 2 * j] = w[p + 2 * j + 1] = 1;
    words.push_back(w);
  }
  words.push_back(IntVec(m, 1));
  IntMatrix rel;
  for (std::size_t k = 0; k + 1 < words.size(); ++k) {
    IntVec r(m);
    for (std::size_t c = 0; c < m; ++c) r[c] = words[k][c] - words[k + 1][c];
    rel.push_back(r);
  }
  const AbGroup u = AbGroup::from_presentation(m, rel, names);
  std::vector<GroupElem> single;
  std::vector<std::pair<std::vector<GroupElem>, std::vector<GroupElem>>> pairs;
  for (std::size_t i = 0; i < p; ++i) single.push_back(u.generator(i));
  for (std::size_t j = 0; j < q; ++j) pairs.push_back({{u.generator(p + 2 * j)}, {u.generator(p + 2 * j + 1)}});
  Grading g = n1_from_blocks(u, single, pairs, f);
  if (!is_fine(g)) throw Error("fine_n1: generators of U are not distinct");
  return {u, std::move(g), p, q};
}

bool is_fine(const Grading& g) { return g.support().size() == g.dim(); }

// ---------------------------------------------------------------- (8,3)

Grading cartan_grading(const Field& f) {
  const Cayley c(f, CayleyBasis::Standard);
  const AbGroup z3 = AbGroup::free(3);
  auto deg = [&](long a, long b, long d) { return z3.element(std::vector<long>{a, b, d}); };
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < 8; ++i) basis.push_back(c.basis_vec(i));
  // e1, e2, u1, u2, u3, v1, v2, v3
  std::vector<GroupElem> degrees{deg(-1, -1, -1), deg(1, 1, 1), deg(1, 0, 0), deg(0, 1, 0),
                                 deg(0, 0, 1),    deg(-1, 0, 0), deg(0, -1, 0), deg(0, 0, -1)};
  return Grading(GradedStructure::TripleC, build_triple_3c(f), c.bn_space(), z3, basis, degrees);
}

Grading cartan_coarsening(const AbGroup& g, const std::vector<GroupElem>& images, const Field& f) {
  const Grading cartan = cartan_grading(f);
  if (images.size() != 3) throw InputError("a homomorphism from Z^3 needs three images");
  const auto alpha = GroupHom::make(cartan.group(), g, images);
  if (!alpha) throw InputError("images do not define a homomorphism");
  std::vector<GroupElem> degrees;
  for (const auto& d : cartan.degrees()) degrees.push_back((*alpha)(d));
  return cartan.with_degrees(g, degrees);
}

namespace {

void require_elementary(const std::vector<GroupElem>& gens, std::size_t rank, const char* what) {
  for (const auto& x : gens)
    if (!(x * x).is_identity()) throw InputError(std::string(what) + ": generator " + x.str() + " has order > 2");
  if (gens.empty() && rank > 0) throw InputError(std::string(what) + ": no generators");
  const auto sub = generated_subgroup(gens.front().group(), gens);
  if (sub.size() != (std::size_t{1} << rank))
    throw InputError(std::string(what) + ": generators span a subgroup of order " + std::to_string(sub.size()) +
                     ", expected rank " + std::to_string(rank));
}

}  // namespace

Grading gamma_GH(const AbGroup& g, const std::vector<GroupElem>& h, const Field& f) {
  if (h.size() != 3) throw InputError("gamma_GH needs three generators");
  for (const auto& x : h)
    if (x.group() != g) throw InputError("gamma_GH: generator belongs to another group");
  require_elementary(h, 3, "gamma_GH");
  const Cayley c(f, CayleyBasis::CD);
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < 8; ++i) basis.push_back(c.basis_vec(i));
  // 1, w1, w2, w3, w4 = w1 w2, w5 = w2 w3, w6 = w1 w2 w3, w7 = w1 w3
  std::vector<GroupElem> degrees{g.identity(), h[0], h[1], h[2], h[0] * h[1], h[1] * h[2], h[0] * h[1] * h[2],
                                 h[0] * h[2]};
  return Grading(GradedStructure::TripleC, build_triple_3c(f, CayleyBasis::CD), c.bn_space(), g, basis, degrees,
                 CayleyBasis::CD);
}

Grading shift(const Grading& g, const GroupElem& h) {
  if (h.group() != g.group()) throw InputError("shift element belongs to another group");
  if (!(h * h).is_identity()) throw InputError("shift needs an element of order <= 2");
  std::vector<GroupElem> degrees;
  for (const auto& d : g.degrees()) degrees.push_back(h * d);
  return g.with_degrees(g.group(), degrees);
}

Grading gamma_GHK(const AbGroup& g, const std::vector<GroupElem>& h_gens, const std::vector<GroupElem>& k_gens,
                  const GroupElem& h, const Field& f) {
  if (h_gens.size() != 4 || k_gens.size() != 3) throw InputError("gamma_GHK needs 4 generators of H and 3 of K");
  require_elementary(h_gens, 4, "gamma_GHK (H)");
  require_elementary(k_gens, 3, "gamma_GHK (K)");
  const auto hs = generated_subgroup(g, h_gens), ks = generated_subgroup(g, k_gens);
  if (!std::includes(hs.begin(), hs.end(), ks.begin(), ks.end())) throw InputError("gamma_GHK: K is not inside H");
  if (!std::binary_search(hs.begin(), hs.end(), h) || std::binary_search(ks.begin(), ks.end(), h))
    throw InputError("gamma_GHK: h must lie in H \\ K");
  return shift(gamma_GH(g, k_gens, f), h);
}

Grading cd_grading(const Field& f) {
  const AbGroup g = AbGroup::elementary2(4);
  auto e = [&](std::size_t i) { return g.generator(i); };
  return gamma_GHK(g, {e(0), e(1), e(2), e(3)}, {e(1), e(2), e(3)}, e(0), f);
}

std::string Classification83::str() const {
  auto list = [](const std::vector<GroupElem>& xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i].str();
    return s + "}";
  };
  switch (family) {
    case 1: {
      std::string s = "family 1 (Cartan coarsening): alpha(eps1, eps2, eps3) = (";
      for (std::size_t i = 0; i < alpha.size(); ++i) s += (i ? ", " : "") + alpha[i].str();
      return s + ")";
    }
    case 2:
      return "family 2 (Gamma(G,H)): H = " + list(h_sub);
    case 3:
      return "family 3 (Gamma(G,H,K)): H = " + list(h_sub) + ", K = " + list(k_sub);
  }
  return "unclassified";
}

Classification83 classify_83(const Grading& g) {
  if ((g.structure() != GradedStructure::TripleC && g.structure() != GradedStructure::X1) || g.dim() != 8)
    throw InputError("classify_83 needs a grading on (C, {...}) or (C, X1)");
  const auto rep = verify_grading(g);
  if (!rep.pass) throw Error("classify_83: grading fails closure: " + rep.witnesses.front());
  const Field& f = g.field();
  const Cayley c(f, g.cayley_basis());
  const auto& b = g.basis();
  Classification83 out;

  // (a) a nonzero isotropic homogeneous x.
  std::optional<Vec> x;
  GroupElem deg_x;
  for (std::size_t i = 0; i < 8 && !x; ++i)
    if (c.norm(b[i]).is_zero()) {
      x = b[i];
      deg_x = g.degrees()[i];
    }
  bool large_component = false;
  for (const auto& s : g.support()) {
    const auto idx = g.component(s);
    if (idx.size() < 2) continue;
    large_component = true;
    for (std::size_t a = 0; a < idx.size() && !x; ++a)
      for (std::size_t k = a + 1; k < idx.size() && !x; ++k) {
        // n(b_a + t b_k) = n(b_a) + t n(b_a, b_k) + t^2 n(b_k); n(b_k) != 0 here.
        const Scalar p0 = c.norm(b[idx[a]]), p1 = c.polar(b[idx[a]], b[idx[k]]), p2 = c.norm(b[idx[k]]);
        const auto root = f.sqrt(p1 * p1 - f.from_int(4) * p0 * p2);
        if (!root) continue;
        const Scalar t = (*root - p1) / (f.from_int(2) * p2);
        x = add(b[idx[a]], scale(t, b[idx[k]]));
        deg_x = s;
      }
  }
  if (!x && large_component)
    throw RequiresClosedField("classify_83: no isotropic vector found in a component of dimension > 1 over " +
                              f.name());

  if (x) {
    // y in the component of degree g^-1 with n(y) = 0 and n(x, y) = 1.
    const GroupElem inv = deg_x.inverse();
    std::optional<Vec> y;
    for (std::size_t k : g.component(inv)) {
      const Scalar pr = c.polar(*x, b[k]);
      if (pr.is_zero()) continue;
      Vec y0 = scale(pr.inverse(), b[k]);
      if ((deg_x * deg_x).is_identity()) y0 = sub(y0, scale(c.norm(y0), *x));
      y = y0;
      break;
    }
    if (!y || !c.norm(*y).is_zero()) throw Error("classify_83: no isotropic partner in degree " + inv.str());
    // U = {x C y} is graded with {x b_k y} of degree deg(b_k).
    const CrossProduct triple = build_triple_3c(f, g.cayley_basis());
    std::vector<Vec> u;
    for (std::size_t k = 0; k < 8 && u.size() < 3; ++k) {
      const Vec w = triple.eval({*x, b[k], *y});
      if (is_zero(w)) continue;
      auto trial = u;
      trial.push_back(w);
      if (rank(Matrix::from_cols(trial)) == trial.size()) {
        u = trial;
        out.alpha.push_back(g.degrees()[k]);
      }
    }
    if (out.alpha.size() != 3) throw Error("classify_83: {x C y} is not three-dimensional");
    if (out.alpha[0] * out.alpha[1] * out.alpha[2] != inv)
      throw Error("classify_83: degrees of {x C y} do not multiply to deg(y)");
    out.family = 1;
    // The coarsened Cartan grading must have the same degree multiset.
    auto a = cartan_coarsening(g.group(), out.alpha, f).degrees();
    auto d = g.degrees();
    std::sort(a.begin(), a.end());
    std::sort(d.begin(), d.end());
    if (a != d) throw Error("classify_83: degree multiset differs from the Cartan coarsening");
    return out;
  }

  // All components are one-dimensional and nonisotropic: the support lies in an elementary 2-group.
  const auto supp = g.support();
  for (const auto& s : supp)
    if (!(s * s).is_identity()) throw Error("classify_83: support element " + s.str() + " has order > 2");
  if (std::binary_search(supp.begin(), supp.end(), g.group().identity())) {
    out.family = 2;
    out.h_sub = supp;
    if (generated_subgroup(g.group(), supp) != supp || supp.size() != 8)
      throw Error("classify_83: support is not a rank-3 subgroup");
    return out;
  }
  const GroupElem s0 = g.degrees()[0];
  for (const auto& s : supp) out.k_sub.push_back(s0 * s);
  std::sort(out.k_sub.begin(), out.k_sub.end());
  auto gens = out.k_sub;
  gens.push_back(s0);
  out.h_sub = generated_subgroup(g.group(), gens);
  if (generated_subgroup(g.group(), out.k_sub) != out.k_sub || out.k_sub.size() != 8 || out.h_sub.size() != 16)
    throw Error("classify_83: shifted support is not a rank-3 subgroup");
  out.family = 3;
  return out;
}

bool iso_83(const Classification83& a, const Classification83& b) {
  if (a.family != b.family) return false;
  if (a.family == 2) return a.h_sub == b.h_sub;
  if (a.family == 3) return a.h_sub == b.h_sub && a.k_sub == b.k_sub;
  if (a.alpha.size() != 3 || b.alpha.size() != 3) return false;
  if (a.alpha[0].group() != b.alpha[0].group()) return false;
  std::array<std::size_t, 3> perm{0, 1, 2};
  do {
    for (int signs = 0; signs < 8; ++signs) {
      bool ok = true;
      for (std::size_t i = 0; i < 3 && ok; ++i) {
        const GroupElem img = (signs >> i) & 1 ? a.alpha[perm[i]].inverse() : a.alpha[perm[i]];
        ok = img == b.alpha[i];
      }
      if (ok) return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

bool iso_83(const Grading& a, const Grading& b) {
  if (a.group() != b.group()) return false;
  return iso_83(classify_83(a), classify_83(b));
}

// ---------------------------------------------------------------- Weyl groups

FineGradingId parse_fine_grading_id(const std::string& s) {
  FineGradingId id{FineGradingId::CD};
  auto number = [&](const std::string& t) -> std::size_t {
    if (t.empty() || !std::all_of(t.begin(), t.end(), ::isdigit)) throw InputError("bad fine grading id '" + s + "'");
    return std::stoul(t);
  };
  if (s == "cartan") id.kind = FineGradingId::CartanB3;
  else if (s == "cd") id.kind = FineGradingId::CD;
  else if (s == "g2-cartan") id.kind = FineGradingId::G2Cartan;
  else if (s == "g2-z2") id.kind = FineGradingId::G2Z2;
  else if (s.rfind("onefold:", 0) == 0) {
    id.kind = FineGradingId::OneFold;
    id.s = number(s.substr(8));
  } else if (s.rfind("n1:", 0) == 0) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw InputError("bad fine grading id '" + s + "' (n1:p,q)");
    id.kind = FineGradingId::N1;
    id.p = number(s.substr(3, comma - 3));
    id.q = number(s.substr(comma + 1));
    if (id.p + 2 * id.q < 3) throw InputError("n1:p,q needs p + 2q >= 3");
  } else {
    throw InputError("unknown fine grading id '" + s + "' (n1:p,q, cartan, cd, g2-cartan, g2-z2, onefold:s)");
  }
  return id;
}

std::string to_string(const FineGradingId& id) {
  switch (id.kind) {
    case FineGradingId::N1:
      return "n1:" + std::to_string(id.p) + "," + std::to_string(id.q);
    case FineGradingId::CartanB3:
      return "cartan";
    case FineGradingId::CD:
      return "cd";
    case FineGradingId::G2Cartan:
      return "g2-cartan";
    case FineGradingId::G2Z2:
      return "g2-z2";
    case FineGradingId::OneFold:
      return "onefold:" + std::to_string(id.s);
  }
  return "?";
}

mpz_class weyl_order(const FineGradingId& id) {
  auto fact = [](std::size_t k) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
  };
  switch (id.kind) {
    case FineGradingId::N1:
      return fact(id.p) * (mpz_class(1) << static_cast<mp_bitcnt_t>(id.q)) * fact(id.q);
    case FineGradingId::CartanB3:
      return 48;
    case FineGradingId::CD:
      return 1344;
    case FineGradingId::G2Cartan:
      return 12;
    case FineGradingId::G2Z2:
      return 168;
    case FineGradingId::OneFold:
      return fact(id.s) * fact(id.s);
  }
  throw InputError("unknown fine grading id");
}

WeylSearch weyl_search_cd(unsigned threads) {
  const Field& q = Field::rationals();
  const Cayley c(q, CayleyBasis::CD);
  // {e_a e_b e_c} = sign * e_k in the CD basis.
  struct Mono {
    int sign;
    int k;
  };
  Mono table[8][8][8];
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      for (int d = 0; d < 8; ++d) {
        const Vec v = c.mul(c.mul(c.basis_vec(a), c.conj(c.basis_vec(b))), c.basis_vec(d));
        int nz = 0;
        for (int k = 0; k < 8; ++k) {
          if (v[k].is_zero()) continue;
          ++nz;
          if (v[k] != q.one() && v[k] != -q.one()) throw Error("weyl_search_cd: CD products are not monomial");
          table[a][b][d] = {v[k] == q.one() ? 1 : -1, k};
        }
        if (nz != 1) throw Error("weyl_search_cd: CD products are not monomial");
      }
  // Triples to check once the highest index among a, b, c, k is assigned.
  std::vector<std::array<int, 3>> at_level[8];
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      for (int d = 0; d < 8; ++d) at_level[std::max({a, b, d, table[a][b][d].k})].push_back({a, b, d});

  std::mutex mu;
  std::uint64_t total = 0;
  std::set<std::uint32_t> perms;
  parallel_for(16, threads, [&](std::size_t begin, std::size_t end, unsigned) {
    std::uint64_t local = 0;
    std::set<std::uint32_t> local_perms;
    int pi[8], sg[8];
    bool used[8] = {};
    std::size_t cur_branch = 0;
    std::function<void(int)> dfs = [&](int m) {
      if (m == 8) {
        ++local;
        std::uint32_t code = 0;
        for (int i = 0; i < 8; ++i) code = code * 8 + static_cast<std::uint32_t>(pi[i]);
        local_perms.insert(code);
        return;
      }
      for (int target = 0; target < 8; ++target) {
        if (used[target]) continue;
        for (int s : {1, -1}) {
          if (m == 0 && static_cast<std::size_t>(target * 2 + (s < 0)) != cur_branch) continue;
          pi[m] = target;
          sg[m] = s;
          bool ok = true;
          for (const auto& t : at_level[m]) {
            const Mono lhs = table[t[0]][t[1]][t[2]];
            const Mono rhs = table[pi[t[0]]][pi[t[1]]][pi[t[2]]];
            if (rhs.k != pi[lhs.k] || lhs.sign * sg[lhs.k] != sg[t[0]] * sg[t[1]] * sg[t[2]] * rhs.sign) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          used[target] = true;
          dfs(m + 1);
          used[target] = false;
        }
      }
    };
    for (cur_branch = begin; cur_branch < end; ++cur_branch) dfs(0);
    std::lock_guard<std::mutex> lock(mu);
    total += local;
    perms.insert(local_perms.begin(), local_perms.end());
  });
  return {total, perms.size()};
}

namespace {

// Some t in f with t^e = v, if the field has one within reach.
std::optional<Scalar> root_in_field(const Field& f, const Scalar& v, std::size_t e) {
  if (e == 1) return v;
  if (e == 2) return f.sqrt(v);
  if (v.is_one()) return f.one();
  if (e % 2 == 1 && v == -f.one()) return -f.one();
  if (f.is_prime_field() && !f.is_extension())
    for (unsigned long k = 1; k < f.characteristic(); ++k) {
      const Scalar t = f.from_int(static_cast<long>(k));
      if (t.pow(static_cast<long>(e)) == v) return t;
    }
  return std::nullopt;
}

}  // namespace

WeylSearch weyl_search_n1(std::size_t p, std::size_t q, const Field& f) {
  const std::size_t n = p + 2 * q;
  if (n > 8) throw InputError("weyl_search_n1: n <= 8 only");
  const FineN1 fine = fine_n1(p, q, n, f);
  const Matrix& gram = fine.grading.form()->gram();
  std::vector<std::size_t> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  WeylSearch out;
  do {
    Matrix perm(n, n, f);
    for (std::size_t i = 0; i < n; ++i) perm(pi[i], i) = f.one();
    const Matrix m = perm.transpose() * gram * perm;
    // m = c * gram for a scalar c.
    std::optional<Scalar> c;
    for (std::size_t i = 0; i < n && !c; ++i)
      for (std::size_t j = 0; j < n && !c; ++j)
        if (!gram(i, j).is_zero()) c = m(i, j) / gram(i, j);
    if (!c || c->is_zero() || m != *c * gram) continue;
    // t P in O~ iff t^(n-2) = c sgn(pi).
    const Scalar target = det(perm) * *c;
    const auto t = root_in_field(f, target, n - 2);
    if (!t)
      throw RequiresClosedField("weyl_search_n1: t^" + std::to_string(n - 2) + " = " + target.str() + " has no root in " +
                                f.name());
    if (!is_automorphism(*t * perm, fine.grading.product())) continue;
    ++out.self_equivalences;
    ++out.weyl_order;
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

}  // namespace xprod
