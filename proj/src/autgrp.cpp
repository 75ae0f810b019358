#include "xprod/autgrp.hpp"

#include <array>
#include <random>

namespace xprod {

namespace {

void require_square(const Matrix& phi, std::size_t n, const char* what) {
  if (phi.rows() != n || phi.cols() != n) throw InputError(std::string(what) + ": matrix has the wrong shape");
}

std::vector<Vec> columns(const Matrix& m) {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
  return cols;
}

}  // namespace

bool is_automorphism(const Matrix& phi, const CrossProduct& x) {
  const std::size_t n = x.dim(), r = x.arity();
  require_square(phi, n, "is_automorphism");
  if (x.kind() == CrossKind::Star) return in_O_tilde(phi, *x.form());
  const auto& table = x.basis_table();
  const auto cols = columns(phi);
  std::vector<std::size_t> d(r, 0);
  for (std::size_t t = 0; t < table.size(); ++t) {
    std::vector<Vec> args;
    for (std::size_t i = 0, rest = t; i < r; ++i, rest /= n) d[r - 1 - i] = rest % n;
    for (std::size_t i : d) args.push_back(cols[i]);
    if (phi * table[t] != x.eval(args)) return false;
  }
  return true;
}

bool in_O(const Matrix& phi, const QuadSpace& b) {
  require_square(phi, b.dim(), "in_O");
  return phi.transpose() * b.gram() * phi == b.gram();
}

bool in_O_plus(const Matrix& phi, const QuadSpace& b) { return in_O(phi, b) && det(phi).is_one(); }

bool in_O_tilde(const Matrix& phi, const QuadSpace& b) {
  require_square(phi, b.dim(), "in_O_tilde");
  const Scalar d = det(phi);
  if (d.is_zero()) return false;
  return phi.transpose() * b.gram() * phi == d * b.gram();
}

Scalar det_root_check(const Matrix& phi, const QuadSpace& b) {
  if (!in_O_tilde(phi, b)) throw Error("det_root_check: map is not in O~(V, b)");
  const std::size_t n = b.dim();
  const Scalar d = det(phi);
  if (!d.pow(static_cast<long>(n) - 2).is_one())
    throw Error("det_root_check: det^(n-2) != 1 for n = " + std::to_string(n) + ", det = " + d.str());
  return d;
}

Matrix witness_with_det(const QuadSpace& b, const Scalar& r0) {
  const std::size_t n = b.dim();
  const Field& f = b.field();
  const Scalar r = r0.in(f);
  if (!r.pow(static_cast<long>(n) - 2).is_one())
    throw InputError("witness_with_det: r = " + r.str() + " is not an (n-2)-th root of unity for n = " +
                     std::to_string(n));
  const Field* k = &f;
  Scalar t;
  if (auto s = f.sqrt(r)) {
    t = *s;
  } else {
    if (f.is_extension()) throw RequiresClosedField("witness_with_det: sqrt(r) needs a second extension");
    k = &Field::extension(f, r.re());
    t = k->element(0, 1);
  }
  const Matrix p = orthogonal_basis(b).in(*k);
  Vec diag(n, t);
  diag[n - 1] = t.pow(static_cast<long>(n) - 1);
  return p * Matrix::diagonal(diag) * *inverse(p);
}

std::pair<Scalar, Scalar> hermitian_form(const Matrix& j, const QuadSpace& b, const Vec& u, const Vec& v) {
  return {b.bform(u, v), -b.bform(j * u, v)};
}

bool is_unitary(const Matrix& phi, const Matrix& j, const QuadSpace& b) {
  const std::size_t n = b.dim();
  require_square(phi, n, "is_unitary");
  const bool commutes = phi * j == j * phi;
  const bool direct = commutes && in_O(phi, b);
  bool preserves_h = commutes;
  for (std::size_t a = 0; a < n && preserves_h; ++a)
    for (std::size_t c = 0; c < n && preserves_h; ++c) {
      const Vec ea = phi.col(a), ec = phi.col(c);
      preserves_h = hermitian_form(j, b, ea, ec) == hermitian_form(j, b, unit_vec(b.field(), n, a),
                                                                   unit_vec(b.field(), n, c));
    }
  if (direct != preserves_h) throw Error("is_unitary: b-test and h-test disagree");
  return direct;
}

LieBasis lie_otilde(const QuadSpace& b) {
  const std::size_t n = b.dim();
  const Field& f = b.field();
  const Matrix& g = b.gram();
  auto var = [n](std::size_t k, std::size_t l) { return k * n + l; };
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vec row = zero_vec(f, n * n);
      for (std::size_t k = 0; k < n; ++k) {
        row[var(k, i)] += g(k, j);
        row[var(k, j)] += g(i, k);
        row[var(k, k)] -= g(i, j);
      }
      rows.push_back(row);
    }
  const Matrix a = Matrix::from_rows(rows);
  LieBasis out;
  for (const Vec& v : nullspace(a)) {
    Matrix m(n, n, f);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) m(k, l) = v[var(k, l)];
    out.basis.push_back(m);
  }
  Vec id = zero_vec(f, n * n);
  for (std::size_t k = 0; k < n; ++k) id[var(k, k)] = f.one();
  out.contains_identity = is_zero(a * id);
  return out;
}

Matrix extend_c0_automorphism(const Matrix& psi, const Field& f, CayleyBasis basis) {
  require_square(psi, 7, "extend_c0_automorphism");
  if (!is_automorphism(psi, build_c0(f, basis)))
    throw InputError("extend_c0_automorphism: map does not preserve the C0 cross product");
  const Cayley c(f, basis);
  std::vector<Vec> cols{c.unit()};
  for (const auto& v : c.c0_basis()) cols.push_back(v);
  const Matrix t = Matrix::from_cols(cols);
  Matrix d(8, 8, f);
  d(0, 0) = f.one();
  d.set_block(1, 1, psi.in(f));
  const Matrix phi = t * d * *inverse(t);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      if (phi * c.mul(c.basis_vec(i), c.basis_vec(j)) != c.mul(phi.col(i), phi.col(j)))
        throw Error("extend_c0_automorphism: extension is not an algebra automorphism");
  return phi;
}

Matrix clifford_phi(const Cayley& c, const Vec& x) {
  Matrix m(16, 16, c.field());
  m.set_block(0, 8, c.para_left(x));
  m.set_block(8, 0, c.para_right(x));
  return m;
}

bool is_related_triple(const Cayley& c, const TriIsometry& t) {
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      const Vec xy = c.para_mul(c.basis_vec(i), c.basis_vec(j));
      if (t.f0 * xy != c.para_mul(t.f1.col(i), t.f2.col(j))) return false;
    }
  return true;
}

bool cyclic_identities_hold(const Cayley& c, const TriIsometry& t) {
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      const Vec xy = c.para_mul(c.basis_vec(i), c.basis_vec(j));
      if (t.f1 * xy != c.para_mul(t.f2.col(i), t.f0.col(j))) return false;
      if (t.f2 * xy != c.para_mul(t.f0.col(i), t.f1.col(j))) return false;
    }
  return true;
}

std::optional<TriIsometry> complete_related_triple(const Cayley& c, const Matrix& f2) {
  require_square(f2, 8, "complete_related_triple");
  const Field& f = c.field();
  const QuadSpace n = c.polar_space();
  if (!in_O_plus(f2, n)) return std::nullopt;
  const Matrix conj = c.conj_matrix();
  TriIsometry t{Matrix(), conj * f2 * conj, f2.in(f)};
  // Products of basis pairs hit every basis vector up to sign; collect 8 independent ones.
  std::vector<Vec> src, dst;
  for (std::size_t i = 0; i < 8 && src.size() < 8; ++i)
    for (std::size_t j = 0; j < 8 && src.size() < 8; ++j) {
      const Vec a = c.para_mul(c.basis_vec(i), c.basis_vec(j));
      auto trial = src;
      trial.push_back(a);
      if (rank(Matrix::from_cols(trial)) == trial.size()) {
        src.push_back(a);
        dst.push_back(c.para_mul(t.f1.col(i), t.f2.col(j)));
      }
    }
  if (src.size() < 8) throw Error("complete_related_triple: basis products do not span C");
  t.f0 = Matrix::from_cols(dst) * *inverse(Matrix::from_cols(src));
  if (t.f0 * c.unit() != c.unit()) return std::nullopt;
  if (!in_O_plus(t.f0, n) || !in_O_plus(t.f1, n)) return std::nullopt;
  if (!is_related_triple(c, t)) return std::nullopt;
  return t;
}

SpinElement spin_element_from_vectors(const Cayley& c, const std::vector<Vec>& xs) {
  const Field& f = c.field();
  if (xs.size() % 2) throw InputError("spin element needs an even number of vectors");
  Scalar norm_product = f.one();
  for (const auto& x : xs) {
    if (x.size() != 8 || !c.in_c0(x)) throw InputError("spin element vectors must lie in C0");
    norm_product *= c.norm(x);
  }
  if (!norm_product.is_one()) throw InputError("spin element vectors must have norms multiplying to 1");
  const Matrix phi_e0 = clifford_phi(c, c.unit());
  Matrix m = Matrix::identity(f, 16);
  for (const auto& x : xs) m = m * (phi_e0 * clifford_phi(c, x));
  if (!m.block(0, 8, 8, 8).is_zero() || !m.block(8, 0, 8, 8).is_zero())
    throw Error("spin element is not block diagonal");
  const Matrix left = m.block(0, 0, 8, 8), right = m.block(8, 8, 8, 8);
  auto triple = complete_related_triple(c, left);
  if (!triple) throw Error("spin element: product of left multiplications has no related triple");
  if (triple->f1 != right) throw Error("spin element: right block disagrees with the completed triple");
  return {m, *triple};
}

// ---------------------------------------------------------------- orbit census

OrbitTarget parse_orbit_target(const std::string& s) {
  if (s == "unit_sphere") return OrbitTarget::UnitSphere;
  if (s == "isotropic") return OrbitTarget::Isotropic;
  if (s == "pair") return OrbitTarget::Pair;
  throw InputError("unknown orbit target '" + s + "' (unit_sphere, isotropic, pair)");
}

std::string to_string(OrbitTarget t) {
  switch (t) {
    case OrbitTarget::UnitSphere:
      return "unit_sphere";
    case OrbitTarget::Isotropic:
      return "isotropic";
    case OrbitTarget::Pair:
      return "pair";
  }
  return "?";
}

namespace {

// F_q^8 with vectors packed as base-q integers; all arithmetic in plain ints.
struct PackedSpace {
  int q;
  std::uint32_t size;
  int polar[8][8];
  int half;  // inverse of 2 mod q

  std::array<int, 8> unpack(std::uint32_t x) const {
    std::array<int, 8> v{};
    for (int i = 0; i < 8; ++i, x /= static_cast<std::uint32_t>(q)) v[i] = static_cast<int>(x % static_cast<std::uint32_t>(q));
    return v;
  }
  std::uint32_t pack(const std::array<int, 8>& v) const {
    std::uint32_t x = 0;
    for (int i = 7; i >= 0; --i) x = x * static_cast<std::uint32_t>(q) + static_cast<std::uint32_t>(v[i]);
    return x;
  }
  int polar_form(const std::array<int, 8>& a, const std::array<int, 8>& b) const {
    long s = 0;
    for (int i = 0; i < 8; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < 8; ++j)
        if (polar[i][j] && b[j]) s += static_cast<long>(a[i]) * polar[i][j] * b[j];
    }
    return static_cast<int>(((s % q) + q) % q);
  }
  int norm(const std::array<int, 8>& a) const { return polar_form(a, a) * half % q; }
};

// Action tables: table[g][x] = g(x).
std::vector<std::vector<std::uint32_t>> action_tables(const PackedSpace& sp, const std::vector<Matrix>& gens) {
  std::vector<std::vector<std::uint32_t>> tables;
  for (const auto& g : gens) {
    int m[8][8];
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) m[i][j] = static_cast<int>(g(i, j).re().get_num().get_si());
    std::vector<std::uint32_t> t(sp.size);
    for (std::uint32_t x = 0; x < sp.size; ++x) {
      const auto v = sp.unpack(x);
      std::array<int, 8> w{};
      for (int i = 0; i < 8; ++i) {
        long s = 0;
        for (int j = 0; j < 8; ++j) s += static_cast<long>(m[i][j]) * v[j];
        w[i] = static_cast<int>(s % sp.q);
      }
      t[x] = sp.pack(w);
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

// count generators L_a L_b / s with a, b random in C0 and n(a) n(b) = s^2 != 0.
std::vector<Matrix> spin_generators(const Cayley& c, std::size_t count, std::mt19937_64& rng) {
  const Field& f = c.field();
  const auto c0 = c.c0_basis();
  auto random_c0 = [&] {
    Vec v = c.zero();
    for (const auto& e : c0) v = add(v, scale(f.random(rng, 3), e));
    return v;
  };
  std::vector<Matrix> gens;
  while (gens.size() < count) {
    const Vec a = random_c0(), b = random_c0();
    const Scalar nn = c.norm(a) * c.norm(b);
    if (nn.is_zero()) continue;
    const auto s = f.sqrt(nn);
    if (!s) continue;
    gens.push_back(s->inverse() * (c.left_mul(a) * c.left_mul(b)));
  }
  return gens;
}

}  // namespace

OrbitCensus orbit_census(const Field& f, OrbitTarget target, std::uint64_t seed) {
  if (!f.is_prime_field() || f.is_extension()) throw InputError("orbit census needs a prime field F_q");
  const int q = static_cast<int>(f.characteristic());
  if (q > 5) throw InputError("orbit census: field too large (q <= 5)");
  if (target == OrbitTarget::Pair && q != 3) throw InputError("orbit census: pair target too large (q = 3 only)");
  const Cayley c(f, CayleyBasis::Standard);
  PackedSpace sp{q, 1, {}, (q + 1) / 2};
  for (int i = 0; i < 8; ++i) sp.size *= static_cast<std::uint32_t>(q);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) sp.polar[i][j] = ((c.polar_gram(i, j) % q) + q) % q;

  std::vector<char> norm_of(sp.size);
  for (std::uint32_t x = 0; x < sp.size; ++x) norm_of[x] = static_cast<char>(sp.norm(sp.unpack(x)));

  // Exhaustive target set.
  OrbitCensus out;
  auto in_target_single = [&](std::uint32_t x) {
    return target == OrbitTarget::UnitSphere ? norm_of[x] == 1 : (x != 0 && norm_of[x] == 0);
  };
  std::vector<std::uint32_t> isotropic;
  if (target == OrbitTarget::Pair) {
    for (std::uint32_t x = 1; x < sp.size; ++x)
      if (norm_of[x] == 0) isotropic.push_back(x);
    for (std::uint32_t x : isotropic) {
      const auto xv = sp.unpack(x);
      for (std::uint32_t y : isotropic)
        if (sp.polar_form(xv, sp.unpack(y)) == 1) ++out.target_size;
    }
  } else {
    for (std::uint32_t x = 0; x < sp.size; ++x) out.target_size += in_target_single(x);
  }

  std::mt19937_64 rng(seed);
  std::size_t count = 16;
  for (int attempt = 0; attempt < 2; ++attempt, count *= 2) {
    const auto tables = action_tables(sp, spin_generators(c, count, rng));
    out.generators = tables.size();
    bool inside = true;
    if (target == OrbitTarget::Pair) {
      const std::uint64_t states = static_cast<std::uint64_t>(sp.size) * sp.size;
      std::vector<bool> seen(states, false);
      const std::uint32_t e1 = sp.pack({1, 0, 0, 0, 0, 0, 0, 0}), e2 = sp.pack({0, 1, 0, 0, 0, 0, 0, 0});
      std::vector<std::uint64_t> frontier{static_cast<std::uint64_t>(e1) * sp.size + e2};
      seen[frontier[0]] = true;
      out.orbit_size = 1;
      while (!frontier.empty()) {
        std::vector<std::uint64_t> next;
        for (std::uint64_t s : frontier) {
          const auto x = static_cast<std::uint32_t>(s / sp.size), y = static_cast<std::uint32_t>(s % sp.size);
          for (const auto& t : tables) {
            const std::uint64_t s2 = static_cast<std::uint64_t>(t[x]) * sp.size + t[y];
            if (seen[s2]) continue;
            seen[s2] = true;
            ++out.orbit_size;
            next.push_back(s2);
            const auto xv = sp.unpack(t[x]), yv = sp.unpack(t[y]);
            inside = inside && norm_of[t[x]] == 0 && norm_of[t[y]] == 0 && sp.polar_form(xv, yv) == 1;
          }
        }
        frontier = std::move(next);
      }
    } else {
      std::vector<char> seen(sp.size, 0);
      const std::uint32_t start =
          target == OrbitTarget::UnitSphere ? sp.pack({1, 1, 0, 0, 0, 0, 0, 0}) : sp.pack({1, 0, 0, 0, 0, 0, 0, 0});
      std::vector<std::uint32_t> frontier{start};
      seen[start] = 1;
      out.orbit_size = 1;
      while (!frontier.empty()) {
        std::vector<std::uint32_t> next;
        for (std::uint32_t x : frontier)
          for (const auto& t : tables) {
            const std::uint32_t y = t[x];
            if (seen[y]) continue;
            seen[y] = 1;
            ++out.orbit_size;
            inside = inside && in_target_single(y);
            next.push_back(y);
          }
        frontier = std::move(next);
      }
    }
    out.equal = inside && out.orbit_size == out.target_size;
    if (out.equal) break;
  }
  return out;
}

}  // namespace xprod
