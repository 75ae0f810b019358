#include "xprod/exterior.hpp"

#include <bit>

namespace xprod {

ExtElement::ExtElement(std::size_t n, std::size_t degree) : n_(n), p_(degree) {
  if (n > kMaxDim) throw InputError("exterior algebra supports dimension <= 16");
  if (degree > n) throw InputError("exterior degree exceeds dimension");
}

ExtElement ExtElement::scalar(std::size_t n, const Scalar& s) {
  ExtElement x(n, 0);
  x.add_term(0, s);
  return x;
}

ExtElement ExtElement::vector(const Vec& v) {
  ExtElement x(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) x.add_term(Blade{1} << i, v[i]);
  return x;
}

ExtElement ExtElement::blade(std::size_t n, const std::vector<std::size_t>& idx, const Scalar& coeff) {
  ExtElement x = scalar(n, coeff);
  for (std::size_t i : idx) {
    if (i >= n) throw InputError("blade index out of range");
    ExtElement e(n, 1);
    e.add_term(Blade{1} << i, 1);
    x = wedge(x, e);
  }
  return x;
}

Scalar ExtElement::coeff(Blade b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? Scalar() : it->second;
}

void ExtElement::add_term(Blade b, const Scalar& c) {
  if (static_cast<std::size_t>(std::popcount(b)) != p_) throw InputError("blade degree mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(b, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExtElement& ExtElement::operator+=(const ExtElement& o) {
  if (o.n_ != n_ || o.p_ != p_) throw InputError("adding exterior elements of different shape");
  for (const auto& [b, c] : o.terms_) add_term(b, c);
  return *this;
}

bool operator==(const ExtElement& x, const ExtElement& y) {
  if (x.n_ != y.n_ || x.p_ != y.p_ || x.terms_.size() != y.terms_.size()) return false;
  auto it = y.terms_.begin();
  for (const auto& [b, c] : x.terms_) {
    if (it->first != b || it->second != c) return false;
    ++it;
  }
  return true;
}

int wedge_sign(ExtElement::Blade a, ExtElement::Blade b) {
  if (a & b) return 0;
  // Count pairs (i in a, j in b) with i > j: each is one transposition.
  int swaps = 0;
  for (ExtElement::Blade rest = b; rest; rest &= rest - 1) {
    const ExtElement::Blade low = rest & -rest;
    swaps += std::popcount(a & ~((low << 1) - 1));
  }
  return swaps % 2 ? -1 : 1;
}

std::vector<std::size_t> blade_indices(ExtElement::Blade b) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; b; ++i, b >>= 1)
    if (b & 1) idx.push_back(i);
  return idx;
}

ExtElement wedge(const ExtElement& x, const ExtElement& y) {
  if (x.dim() != y.dim()) throw InputError("wedge of elements over different spaces");
  if (x.degree() + y.degree() > x.dim()) throw InputError("wedge degree exceeds dimension");
  ExtElement r(x.dim(), x.degree() + y.degree());
  for (const auto& [a, ca] : x.terms()) {
    for (const auto& [b, cb] : y.terms()) {
      const int s = wedge_sign(a, b);
      if (s == 0) continue;
      r.add_term(a | b, s > 0 ? ca * cb : -(ca * cb));
    }
  }
  return r;
}

namespace {

Scalar blade_pairing(const QuadSpace& space, ExtElement::Blade a, ExtElement::Blade b) {
  const auto ia = blade_indices(a), ib = blade_indices(b);
  Matrix m(ia.size(), ib.size(), space.field());
  for (std::size_t i = 0; i < ia.size(); ++i)
    for (std::size_t j = 0; j < ib.size(); ++j) m(i, j) = space.gram()(ia[i], ib[j]);
  return det(m);
}

std::vector<ExtElement::Blade> blades_of_degree(std::size_t n, std::size_t p) {
  std::vector<ExtElement::Blade> out;
  for (ExtElement::Blade b = 0; b < (ExtElement::Blade{1} << n); ++b)
    if (static_cast<std::size_t>(std::popcount(b)) == p) out.push_back(b);
  return out;
}

}  // namespace

Scalar ext_form(const QuadSpace& space, const ExtElement& x, const ExtElement& y) {
  if (x.dim() != space.dim() || y.dim() != space.dim()) throw InputError("ext_form: dimension mismatch");
  Scalar s = space.field().zero();
  if (x.degree() != y.degree()) return s;
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) s += ca * cb * blade_pairing(space, a, b);
  return s;
}

VolumeElement volume_element(const QuadSpace& space) {
  const std::size_t n = space.dim();
  const Scalar d = det(space.gram());
  auto lambda = space.field().sqrt(d.inverse());
  if (!lambda) {
    throw RequiresClosedField("discriminant " + d.str() + " is not a square in " + space.field().name());
  }
  const ExtElement::Blade full = (ExtElement::Blade{1} << n) - 1;
  ExtElement omega(n, n);
  omega.add_term(full, *lambda);
  return {*lambda, omega};
}

std::optional<Scalar> disc_one_rescaling(const QuadSpace& space) {
  const Scalar d = det(space.gram());
  if (space.field().sqrt(d)) return space.field().one();
  if (space.dim() % 2 == 1) return d;
  return std::nullopt;
}

ExtElement hodge_star(const QuadSpace& space, const VolumeElement& vol, const ExtElement& x) {
  const std::size_t n = space.dim();
  if (x.dim() != n) throw InputError("hodge_star: dimension mismatch");
  const std::size_t q = n - x.degree();
  const ExtElement::Blade full = (ExtElement::Blade{1} << n) - 1;
  const auto basis = blades_of_degree(n, q);
  // Solve sum_K c_K b(e_K, e_J) = b(x ^ e_J, omega) for every blade J of degree q.
  const Scalar vol_pair = vol.lambda * det(space.gram());
  Matrix g(basis.size(), basis.size(), space.field());
  Vec rhs(basis.size(), space.field().zero());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t k = 0; k < basis.size(); ++k) g(j, k) = blade_pairing(space, basis[k], basis[j]);
    const ExtElement::Blade comp = full & ~basis[j];
    const Scalar c = x.coeff(comp);
    if (!c.is_zero()) rhs[j] = c * vol_pair * wedge_sign(comp, basis[j]);
  }
  auto sol = solve_linear(g, rhs);
  if (!sol) throw Error("hodge_star: degenerate blade pairing");
  ExtElement r(n, q);
  for (std::size_t k = 0; k < basis.size(); ++k) r.add_term(basis[k], (*sol)[k]);
  return r;
}

StarEvaluator::StarEvaluator(const QuadSpace& space)
    : space_(space), vol_(volume_element(space)), gram_inv_(*inverse(space.gram())) {
  if (space.dim() < 3) throw InputError("the star cross product needs n >= 3");
}

Vec StarEvaluator::operator()(const std::vector<Vec>& vs) const {
  const std::size_t n = space_.dim();
  if (vs.size() != n - 1) throw InputError("star cross product expects n-1 arguments");
  const Field& f = space_.field();
  Matrix rows(n - 1, n, f);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (vs[i].size() != n) throw InputError("star cross product: vector length mismatch");
    for (std::size_t j = 0; j < n; ++j) rows(i, j) = vs[i][j].in(f);
  }
  // v_1 ^ ... ^ v_{n-1} has coefficient minor_k on the blade missing index k,
  // and (blade missing k) ^ e_k = (-1)^(n-1-k) e_1 ^ ... ^ e_n.
  const Scalar inv_lambda = vol_.lambda.inverse();
  Vec rhs(n, f.zero());
  for (std::size_t k = 0; k < n; ++k) {
    Matrix minor(n - 1, n - 1, f);
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = 0, c = 0; j < n; ++j)
        if (j != k) minor(i, c++) = rows(i, j);
    const Scalar m = det(minor);
    if (m.is_zero()) continue;
    rhs[k] = (n - 1 - k) % 2 ? -(m * inv_lambda) : m * inv_lambda;
  }
  return gram_inv_ * rhs;
}

Vec star_cross(const QuadSpace& space, const VolumeElement& vol, const std::vector<Vec>& vs) {
  StarEvaluator ev(space);
  if (ev.volume().lambda != vol.lambda) {
    // Opposite orientation flips the sign of every value.
    return scale(-space.field().one(), ev(vs));
  }
  return ev(vs);
}

}  // namespace xprod
