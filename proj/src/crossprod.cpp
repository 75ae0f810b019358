#include "xprod/crossprod.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <tuple>

#include "xprod/parallel.hpp"

namespace xprod {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > (std::size_t{1} << 62) / std::max<std::size_t>(b, 1)) return std::size_t{1} << 62;
    r *= b;
  }
  return r;
}

std::vector<std::size_t> digits(std::size_t idx, std::size_t n, std::size_t r) {
  std::vector<std::size_t> d(r);
  for (std::size_t k = r; k-- > 0;) {
    d[k] = idx % n;
    idx /= n;
  }
  return d;
}

std::size_t undigits(const std::vector<std::size_t>& d, std::size_t n) {
  std::size_t idx = 0;
  for (std::size_t x : d) idx = idx * n + x;
  return idx;
}

std::string tuple_str(const std::vector<std::size_t>& d) {
  std::string s = "(";
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (k) s += ",";
    s += "e" + std::to_string(d[k] + 1);
  }
  return s + ")";
}

std::string vecs_str(const std::vector<Vec>& vs) {
  std::string s = "(";
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (k) s += ", ";
    s += str(vs[k]);
  }
  return s + ")";
}

Vec random_vec(const Field& f, std::size_t n, std::mt19937_64& rng) {
  Vec v(n);
  for (auto& c : v) c = f.random(rng, 3);
  return v;
}

// Keeps the lowest-index failure seen by any worker.
// Workers stop once a failure below their position is known, so the
// reported witness does not depend on the thread count.
struct FirstFailure {
  std::mutex mu;
  std::atomic<std::size_t> index{SIZE_MAX};
  std::string witness;

  void offer(std::size_t idx, std::string w) {
    std::lock_guard<std::mutex> lock(mu);
    if (idx < index) {
      index = idx;
      witness = std::move(w);
    }
  }
  bool failed() const { return index != SIZE_MAX; }
  bool settled_before(std::size_t idx) const { return index.load() < idx; }
};

using Sparse = std::vector<std::pair<std::size_t, Scalar>>;

std::vector<Sparse> sparsify(const std::vector<Vec>& vs) {
  std::vector<Sparse> out(vs.size());
  for (std::size_t t = 0; t < vs.size(); ++t)
    for (std::size_t k = 0; k < vs[t].size(); ++k)
      if (!vs[t][k].is_zero()) out[t].emplace_back(k, vs[t][k]);
  return out;
}

Scalar sparse_dot(const Sparse& s, const Vec& dense) {
  Scalar d;
  for (const auto& [k, v] : s)
    if (!dense[k].is_zero()) d += v * dense[k];
  return d;
}

// Nonzero pattern of a Gram matrix; lets sweeps skip blocks with a zero row or column.
struct Pattern {
  std::size_t n;
  std::vector<char> nz;

  explicit Pattern(const Matrix& g) : n(g.rows()), nz(n * n) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) nz[i * n + j] = !g(i, j).is_zero();
  }

  bool block_singular(const std::size_t* a, const std::size_t* c, std::size_t r) const {
    for (std::size_t i = 0; i < r; ++i) {
      bool row = false, col = false;
      for (std::size_t j = 0; j < r; ++j) {
        row = row || nz[a[i] * n + c[j]];
        col = col || nz[a[j] * n + c[i]];
      }
      if (!row || !col) return true;
    }
    return false;
  }
};

// Laplace expansion along the first row, skipping zero entries; sweeps feed
// it small, mostly sparse Gram blocks where this beats elimination.
Scalar laplace_det(const Matrix& m, std::size_t row, unsigned cols_left) {
  if (row + 1 == m.rows()) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (cols_left >> j & 1) return m(row, j);
  }
  Scalar d;
  int sign = 1;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (!(cols_left >> j & 1)) continue;
    if (!m(row, j).is_zero()) {
      const Scalar minor = laplace_det(m, row + 1, cols_left & ~(1u << j));
      if (!minor.is_zero()) d += sign > 0 ? m(row, j) * minor : -(m(row, j) * minor);
    }
    sign = -sign;
  }
  return d;
}

Scalar small_det(const Matrix& m) {
  if (m.rows() > 5) return det(m);
  return laplace_det(m, 0, (1u << m.rows()) - 1);
}

}  // namespace

// ---------------------------------------------------------------- CrossProduct

CrossProduct CrossProduct::tensor(std::size_t r, std::size_t n, const Field& f, std::vector<Scalar> data,
                                  std::optional<QuadSpace> b) {
  if (r == 0 || n == 0) throw InputError("cross product needs arity and dimension >= 1");
  if (data.size() != ipow(n, r + 1)) throw InputError("tensor size does not match n^(r+1)");
  if (b && b->dim() != n) throw InputError("bilinear form dimension does not match the product");
  CrossProduct x;
  x.r_ = r;
  x.n_ = n;
  x.field_ = &f;
  for (auto& c : data) c = c.in(f);
  x.data_ = std::move(data);
  x.form_ = std::move(b);
  return x;
}

CrossProduct CrossProduct::from_map(std::size_t r, std::size_t n, const Field& f,
                                    const std::function<Vec(const std::vector<Vec>&)>& map,
                                    std::optional<QuadSpace> b) {
  const std::size_t tuples = ipow(n, r);
  std::vector<Scalar> data(tuples * n, f.zero());
  for (std::size_t t = 0; t < tuples; ++t) {
    std::vector<Vec> args;
    for (std::size_t i : digits(t, n, r)) args.push_back(unit_vec(f, n, i));
    const Vec v = map(args);
    if (v.size() != n) throw InputError("map returned a vector of the wrong length");
    for (std::size_t k = 0; k < n; ++k) data[t * n + k] = v[k];
  }
  return tensor(r, n, f, std::move(data), std::move(b));
}

CrossProduct CrossProduct::star(const QuadSpace& b) {
  CrossProduct x;
  x.star_ = std::make_shared<StarEvaluator>(b);
  x.r_ = b.dim() - 1;
  x.n_ = b.dim();
  x.field_ = &b.field();
  x.form_ = b;
  return x;
}

CrossProduct CrossProduct::with_form(const QuadSpace& b) const {
  if (b.dim() != n_) throw InputError("bilinear form dimension does not match the product");
  CrossProduct x = *this;
  x.form_ = b;
  return x;
}

const std::vector<Scalar>& CrossProduct::tensor_data() const {
  if (star_) throw InputError("star cross products have no stored tensor");
  return data_;
}

Vec CrossProduct::eval(const std::vector<Vec>& vs) const {
  if (vs.size() != r_) throw InputError("cross product arity mismatch");
  for (const auto& v : vs)
    if (v.size() != n_) throw InputError("cross product argument has the wrong dimension");
  if (star_) return (*star_)(vs);
  Vec out = zero_vec(*field_, n_);
  // Walk the nonzero coordinates of every argument.
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> nz(r_);
  for (std::size_t a = 0; a < r_; ++a)
    for (std::size_t i = 0; i < n_; ++i)
      if (!vs[a][i].is_zero()) nz[a].emplace_back(i, vs[a][i]);
  std::vector<std::size_t> pos(r_, 0);
  for (const auto& l : nz)
    if (l.empty()) return out;
  while (true) {
    std::size_t idx = 0;
    Scalar coef = field_->one();
    for (std::size_t a = 0; a < r_; ++a) {
      idx = idx * n_ + nz[a][pos[a]].first;
      coef *= nz[a][pos[a]].second;
    }
    for (std::size_t k = 0; k < n_; ++k) {
      const Scalar& c = data_[idx * n_ + k];
      if (!c.is_zero()) out[k] += coef * c;
    }
    std::size_t a = r_;
    while (a > 0) {
      --a;
      if (++pos[a] < nz[a].size()) break;
      pos[a] = 0;
      if (a == 0) return out;
    }
  }
}

Vec CrossProduct::eval_basis(const std::vector<std::size_t>& idx) const {
  if (idx.size() != r_) throw InputError("cross product arity mismatch");
  if (star_) {
    // Only the minor missing the one absent index survives; it is the sign of idx.
    std::vector<char> seen(n_, 0);
    int sign = 1;
    for (std::size_t a = 0; a < r_; ++a) {
      if (idx[a] >= n_) throw InputError("basis index out of range");
      if (seen[idx[a]]) return zero_vec(*field_, n_);
      seen[idx[a]] = 1;
      for (std::size_t b = a + 1; b < r_; ++b)
        if (idx[a] > idx[b]) sign = -sign;
    }
    const std::size_t k = static_cast<std::size_t>(std::find(seen.begin(), seen.end(), 0) - seen.begin());
    if ((n_ - 1 - k) % 2) sign = -sign;
    return scale(field_->from_int(sign) * star_->volume().lambda.inverse(), star_->gram_inverse().col(k));
  }
  const std::size_t t = undigits(idx, n_);
  return Vec(data_.begin() + static_cast<long>(t * n_), data_.begin() + static_cast<long>((t + 1) * n_));
}

const std::vector<Vec>& CrossProduct::basis_table(unsigned threads) const {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (!table_->empty()) return *table_;
  const std::size_t tuples = ipow(n_, r_);
  std::vector<Vec> values(tuples);
  parallel_for(tuples, threads, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t t = begin; t < end; ++t) values[t] = eval_basis(digits(t, n_, r_));
  });
  *table_ = std::move(values);
  return *table_;
}

// ---------------------------------------------------------------- verification

AxiomReport verify_axioms(const CrossProduct& x, const QuadSpace& b, const VerifyOptions& opt) {
  const std::size_t n = x.dim(), r = x.arity();
  if (b.dim() != n) throw InputError("verify_axioms: form and product dimensions differ");
  const Field* f = common_field(&x.field(), &b.field());
  const Matrix& g = b.gram();
  AxiomReport rep;

  const bool a1_exhaustive = ipow(n, r + 1) <= opt.exhaustive_limit;
  const bool a2_exhaustive = ipow(n, 2 * r) <= opt.exhaustive_limit;
  const std::size_t tuples = ipow(n, r);

  std::vector<Vec> bx;  // bx[t][k] = b(X(e_t), e_k)
  if (a1_exhaustive || a2_exhaustive) {
    const auto& table = x.basis_table(opt.threads);
    bx.resize(tuples);
    for (std::size_t t = 0; t < tuples; ++t) bx[t] = g * table[t];
  }

  // (A1) via its polarization on basis tuples, which includes the diagonal case.
  if (a1_exhaustive) {
    FirstFailure fail;
    parallel_for(tuples, opt.threads, [&](std::size_t begin, std::size_t end, unsigned) {
      for (std::size_t t = begin; t < end && !fail.settled_before(t); ++t) {
        const auto d = digits(t, n, r);
        for (std::size_t j = 0; j < r; ++j) {
          for (std::size_t i = 0; i < n; ++i) {
            auto d2 = d;
            d2[j] = i;
            const Scalar v = bx[t][i] + bx[undigits(d2, n)][d[j]];
            if (!v.is_zero()) {
              fail.offer(t, "A1 fails: b(X" + tuple_str(d) + ", e" + std::to_string(i + 1) + ") + b(X" +
                                tuple_str(d2) + ", e" + std::to_string(d[j] + 1) + ") = " + v.str());
            }
          }
        }
      }
    });
    rep.a1.checked = tuples * r * n;
    rep.a1.pass = !fail.failed();
    rep.a1.witness = fail.witness;
  } else {
    rep.a1.exhaustive = false;
    std::mt19937_64 rng(opt.seed);
    for (std::size_t s = 0; s < opt.samples && rep.a1.pass; ++s) {
      std::vector<Vec> vs;
      for (std::size_t k = 0; k < r; ++k) vs.push_back(random_vec(*f, n, rng));
      const Vec xv = x.eval(vs);
      for (std::size_t k = 0; k < r; ++k) {
        const Scalar v = b.bform(xv, vs[k]);
        if (!v.is_zero()) {
          rep.a1.pass = false;
          rep.a1.witness = "A1 fails on sample " + vecs_str(vs) + " slot " + std::to_string(k + 1) + ": " + v.str();
          break;
        }
      }
      ++rep.a1.checked;
    }
  }

  // (A2) is quadratic in each argument, so it holds iff for all basis tuples
  // u, w the sum over every way of swapping u_i with w_i of
  // b(X(u'), X(w')) - det(b(u'_i, w'_j)) vanishes. Swapping is a symmetry of
  // the sum, so slot pairs are taken with u_i <= w_i.
  if (a2_exhaustive) {
    const auto table = sparsify(x.basis_table(opt.threads));
    const Pattern pat(g);
    std::vector<std::pair<std::size_t, std::size_t>> slot_pairs;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = a; c < n; ++c) slot_pairs.emplace_back(a, c);
    const std::size_t m = slot_pairs.size();
    const std::size_t total = ipow(m, r);
    FirstFailure fail;
    parallel_for(total, opt.threads, [&](std::size_t begin, std::size_t end, unsigned) {
      Matrix gm(r, r, *f);
      std::vector<std::size_t> du(r), dw(r), a(r), c(r);
      for (std::size_t p = begin; p < end && !fail.settled_before(p); ++p) {
        for (std::size_t i = r, q = p; i-- > 0; q /= m) std::tie(du[i], dw[i]) = slot_pairs[q % m];
        Scalar sum;
        for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
          for (std::size_t i = 0; i < r; ++i) {
            const bool sw = (mask >> i) & 1;
            a[i] = sw ? dw[i] : du[i];
            c[i] = sw ? du[i] : dw[i];
          }
          const auto& xa = table[undigits(a, n)];
          if (!xa.empty()) sum += sparse_dot(xa, bx[undigits(c, n)]);
          if (pat.block_singular(a.data(), c.data(), r)) continue;
          for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) gm(i, j) = g(a[i], c[j]);
          sum -= small_det(gm);
        }
        if (!sum.is_zero()) {
          fail.offer(p, "A2 fails: polarization at " + tuple_str(du) + " | " + tuple_str(dw) + " is " + sum.str());
        }
      }
    });
    rep.a2.checked = total;
    rep.a2.pass = !fail.failed();
    rep.a2.witness = fail.witness;
  } else {
    rep.a2.exhaustive = false;
    std::mt19937_64 rng(opt.seed ^ 0xA2A2A2A2ull);
    for (std::size_t s = 0; s < opt.samples; ++s) {
      std::vector<Vec> vs;
      for (std::size_t k = 0; k < r; ++k) vs.push_back(random_vec(*f, n, rng));
      const Vec xv = x.eval(vs);
      const Scalar lhs = b.bform(xv, xv);
      const Scalar rhs = b.gram_det(vs, vs);
      ++rep.a2.checked;
      if (lhs != rhs) {
        rep.a2.pass = false;
        rep.a2.witness = "A2 fails on sample " + vecs_str(vs) + ": b(X,X) = " + lhs.str() + ", gram det = " + rhs.str();
        break;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------- constructors

Matrix standard_complex_structure(const Field& f, std::size_t s) {
  Matrix j(2 * s, 2 * s, f);
  for (std::size_t k = 0; k < s; ++k) {
    j(2 * k + 1, 2 * k) = f.one();
    j(2 * k, 2 * k + 1) = -f.one();
  }
  return j;
}

OneFold build_one_fold(const Matrix& j0, const std::optional<QuadSpace>& space) {
  if (!j0.square()) throw InputError("1-fold product must be a square matrix");
  const std::size_t n = j0.rows();
  const Field& f = field_of(j0);
  const Matrix j = j0.in(f);
  if (n % 2 != 0) throw InputError("1-fold cross products need even dimension");
  if (j * j != -Matrix::identity(f, n)) throw InputError("1-fold product must satisfy J^2 = -id");
  if (!j.trace().is_zero()) throw InputError("1-fold product must have trace 0");
  auto product = [&](const QuadSpace& b) {
    return CrossProduct::from_map(1, n, f, [&](const std::vector<Vec>& v) { return j * v[0]; }, b);
  };
  if (space) return {product(*space), *space};

  const std::size_t s = n / 2;
  Matrix basis(n, n, f);
  Matrix pairing(n, n, f);
  if (auto i = f.sqrt(f.from_int(-1))) {
    // V+ and V- are the +-i eigenspaces; pair their bases hyperbolically.
    const Matrix id = Matrix::identity(f, n);
    const auto plus = nullspace(j - *i * id);
    const auto minus = nullspace(j + *i * id);
    if (plus.size() != s || minus.size() != s) throw Error("eigenspaces of J have unequal dimensions");
    for (std::size_t k = 0; k < s; ++k) {
      basis.set_col(k, plus[k]);
      basis.set_col(s + k, minus[k]);
      pairing(k, s + k) = pairing(s + k, k) = f.one();
    }
  } else {
    // F id + F J is a field; {v_k, J v_k} over a K-basis is declared orthonormal.
    std::vector<Vec> cols;
    for (std::size_t e = 0; e < n && cols.size() < n; ++e) {
      auto trial = cols;
      trial.push_back(unit_vec(f, n, e));
      trial.push_back(j * unit_vec(f, n, e));
      if (rank(Matrix::from_cols(trial)) == trial.size()) cols = std::move(trial);
    }
    for (std::size_t k = 0; k < n; ++k) {
      basis.set_col(k, cols[k]);
      pairing(k, k) = f.one();
    }
  }
  const Matrix inv = *inverse(basis);
  const QuadSpace b(inv.transpose() * pairing * inv);
  return {product(b), b};
}

CrossProduct build_star(const QuadSpace& b) { return CrossProduct::star(b); }

CrossProduct build_c0(const Field& f, CayleyBasis basis) {
  const Cayley c(f, basis);
  const auto c0 = c.c0_basis();
  auto coords = [&](const Vec& x) {
    Vec out;
    if (basis == CayleyBasis::Standard) {
      out.push_back(x[0]);
      for (std::size_t i = 2; i < 8; ++i) out.push_back(x[i]);
    } else {
      for (std::size_t i = 1; i < 8; ++i) out.push_back(x[i]);
    }
    return out;
  };
  Matrix g(7, 7, f);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) g(i, j) = c.bn(c0[i], c0[j]);
  std::vector<Scalar> data;
  data.reserve(7 * 7 * 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j)
      for (const auto& v : coords(c.c0_cross(c0[i], c0[j]))) data.push_back(v);
  return CrossProduct::tensor(2, 7, f, std::move(data), QuadSpace(g));
}

CrossProduct build_three_fold(int eps, const Scalar& alpha, const Field& f, CayleyBasis basis) {
  if (eps != 1 && eps != -1) throw InputError("epsilon must be +1 or -1");
  const Scalar a = alpha.in(f);
  if (a.is_zero()) throw InputError("alpha must be nonzero");
  const Cayley c(f, basis);
  return CrossProduct::from_map(
      3, 8, f, [&](const std::vector<Vec>& v) { return scale(a, c.three_fold(eps, v[0], v[1], v[2])); },
      c.bn_space().scaled(a));
}

CrossProduct build_triple_3c(const Field& f, CayleyBasis basis) {
  const Cayley c(f, basis);
  return CrossProduct::from_map(3, 8, f, [&](const std::vector<Vec>& v) { return c.triple_3c(v[0], v[1], v[2]); });
}

CrossProduct build_quaternion(const Field& f) {
  const Quaternions h(f);
  return CrossProduct::from_map(
      3, 4, f, [&](const std::vector<Vec>& v) { return h.cross(v[0], v[1], v[2]); }, h.polar_space());
}

// ---------------------------------------------------------------- epsilon identity

EpsilonReport satisfies_epsilon_identity(const CrossProduct& x, const QuadSpace& b, int eps, unsigned threads) {
  if (x.arity() != 3) throw InputError("the epsilon identity concerns 3-fold products");
  const std::size_t n = x.dim();
  const auto& table = x.basis_table(threads);
  const Matrix& g = b.gram();
  const std::size_t triples = n * n * n;
  std::vector<Vec> bx(triples);
  for (std::size_t t = 0; t < triples; ++t) bx[t] = g * table[t];
  static constexpr std::size_t kEven[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  EpsilonReport rep;
  FirstFailure fail;
  const auto sparse = sparsify(table);
  const Pattern pat(g);
  parallel_for(triples, threads, [&](std::size_t begin, std::size_t end, unsigned) {
    Matrix m(3, 3, b.field());
    std::vector<std::size_t> u(3), v(3);
    for (std::size_t ut = begin; ut < end && !fail.settled_before(ut); ++ut) {
      u = digits(ut, n, 3);
      for (std::size_t vt = 0; vt < triples; ++vt) {
        v[0] = vt / (n * n), v[1] = (vt / n) % n, v[2] = vt % n;
        Scalar sum;
        for (const auto& s : kEven) {
          for (const auto& t : kEven) {
            const Scalar& c = g(u[s[0]], v[t[0]]);
            if (c.is_zero()) continue;
            const std::size_t idx = (u[s[2]] * n + v[t[1]]) * n + v[t[2]];
            sum += c * bx[idx][u[s[1]]];
          }
        }
        Scalar rhs = eps > 0 ? sum : -sum;
        if (!pat.block_singular(u.data(), v.data(), 3)) {
          for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = g(u[i], v[j]);
          rhs += small_det(m);
        }
        const Scalar lhs = sparse.empty() ? Scalar() : sparse_dot(sparse[ut], bx[vt]);
        if (lhs != rhs) {
          fail.offer(ut, "identity fails at " + tuple_str(u) + " | " + tuple_str(v) + ": " + lhs.str() + " vs " +
                             rhs.str());
          break;
        }
      }
    }
  });
  rep.checked = triples * triples;
  rep.pass = !fail.failed();
  rep.witness = fail.witness;
  return rep;
}

// ---------------------------------------------------------------- admissible forms

namespace {

// Row echelon form built one constraint at a time.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t cols) : cols_(cols) {}

  bool add(Vec row) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Scalar c = row[pivots_[k]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (!rows_[k][j].is_zero()) row[j] -= c * rows_[k][j];
    }
    std::size_t p = 0;
    while (p < cols_ && row[p].is_zero()) ++p;
    if (p == cols_) return false;
    const Scalar inv = row[p].inverse();
    for (auto& c : row) c *= inv;
    rows_.push_back(std::move(row));
    pivots_.push_back(p);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  bool annihilates(const Vec& v) const {
    for (const auto& row : rows_)
      if (!dot(row, v).is_zero()) return false;
    return true;
  }

 private:
  std::size_t cols_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

AdmissibleForms admissible_forms(const CrossProduct& x, const VerifyOptions& opt) {
  if (!x.form()) throw InputError("admissible_forms needs a reference bilinear form");
  const std::size_t n = x.dim(), r = x.arity();
  const Field& f = x.field();
  const Matrix bref = x.form()->gram().in(f);
  // Unknowns: B'_{ij} for i <= j.
  std::vector<std::vector<std::size_t>> var(n, std::vector<std::size_t>(n));
  std::size_t nv = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) var[i][j] = var[j][i] = nv++;
  Vec ref(nv);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) ref[var[i][j]] = bref(i, j);

  EchelonBuilder eb(nv);
  bool done = false;
  auto offer = [&](Vec row) {
    if (eb.add(std::move(row)) && r >= 2 && eb.rank() + 1 == nv && eb.annihilates(ref)) done = true;
  };
  // b'(X(t), e_i) + b'(X(t with slot j set to i), e_{t_j}) = 0.
  const std::size_t tuples = ipow(n, r);
  const auto& table = x.basis_table(opt.threads);
  for (std::size_t t = 0; t < tuples && !done; ++t) {
    const auto d = digits(t, n, r);
    const Vec& xt = table[t];
    for (std::size_t j = 0; j < r && !done; ++j) {
      for (std::size_t i = 0; i < n && !done; ++i) {
        auto d2 = d;
        d2[j] = i;
        const Vec& xt2 = table[undigits(d2, n)];
        Vec row = zero_vec(f, nv);
        for (std::size_t k = 0; k < n; ++k) {
          if (!xt[k].is_zero()) row[var[k][i]] += xt[k];
          if (!xt2[k].is_zero()) row[var[k][d[j]]] += xt2[k];
        }
        offer(std::move(row));
      }
    }
  }
  if (r == 1) {
    // For r = 1 the Gram axiom is linear too: b'(Ja, Jc) = b'(a, c).
    for (std::size_t a = 0; a < n; ++a) {
      const Vec ja = x.eval_basis({a});
      for (std::size_t c = a; c < n; ++c) {
        const Vec jc = x.eval_basis({c});
        Vec row = zero_vec(f, nv);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t k = 0; k < n; ++k)
            if (!ja[i].is_zero() && !jc[k].is_zero()) row[var[i][k]] += ja[i] * jc[k];
        row[var[a][c]] -= f.one();
        offer(std::move(row));
      }
    }
  }

  AdmissibleForms out;
  out.linear_dim = nv - eb.rank();
  out.reference_in_solution = eb.annihilates(ref);
  if (r == 1) {
    out.note = "forms are not determined by a 1-fold product; solution space has dimension " +
               std::to_string(out.linear_dim);
    return out;
  }
  if (out.linear_dim != 1) {
    out.note = "linear constraints leave dimension " + std::to_string(out.linear_dim) +
               "; only scalar multiples of the reference form were tested";
  }
  for (const Scalar& mu : f.roots_of_unity(static_cast<unsigned>(r - 1))) {
    const QuadSpace cand(mu * bref);
    if (verify_axioms(x, cand, opt).pass()) {
      out.mus.push_back(mu);
      out.forms.push_back(cand.gram());
    }
  }
  return out;
}

}  // namespace xprod
