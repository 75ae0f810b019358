#include "xprod/abgroup.hpp"

#include <algorithm>
#include <set>

#include "xprod/error.hpp"

namespace xprod {

namespace {

IntMatrix identity_int(std::size_t n) {
  IntMatrix m(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

mpz_class mod_nonneg(const mpz_class& a, const mpz_class& d) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return r;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input, std::size_t cols) {
  IntMatrix a = input;
  const std::size_t k = a.size();
  for (const auto& row : a)
    if (row.size() != cols) throw InputError("relation row has the wrong number of generators");
  IntMatrix v = identity_int(cols), vi = identity_int(cols);

  // Column operations are mirrored on V (columns) and V^-1 (rows).
  auto col_addmul = [&](std::size_t j, std::size_t t, const mpz_class& q) {  // col_j -= q col_t
    for (auto& row : a) row[j] -= q * row[t];
    for (auto& row : v) row[j] -= q * row[t];
    for (std::size_t c = 0; c < cols; ++c) vi[t][c] += q * vi[j][c];
  };
  auto col_swap = [&](std::size_t j, std::size_t t) {
    if (j == t) return;
    for (auto& row : a) std::swap(row[j], row[t]);
    for (auto& row : v) std::swap(row[j], row[t]);
    std::swap(vi[j], vi[t]);
  };
  auto col_negate = [&](std::size_t j) {
    for (auto& row : a) row[j] = -row[j];
    for (auto& row : v) row[j] = -row[j];
    for (auto& x : vi[j]) x = -x;
  };

  std::size_t t = 0;
  for (; t < std::min(k, cols); ++t) {
    bool found = false;
    while (true) {
      std::size_t pi = 0, pj = 0;
      found = false;
      for (std::size_t i = t; i < k; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (sgn(a[i][j]) != 0 && (!found || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i, pj = j, found = true;
          }
      if (!found) break;
      std::swap(a[pi], a[t]);
      col_swap(pj, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < k; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        const mpz_class q = floor_div(a[i][t], a[t][t]);
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        clean = clean && sgn(a[i][t]) == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        col_addmul(j, t, floor_div(a[t][j], a[t][t]));
        clean = clean && sgn(a[t][j]) == 0;
      }
      if (!clean) continue;
      // Force d_t | every remaining entry.
      bool divides = true;
      for (std::size_t i = t + 1; i < k && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (sgn(mod_nonneg(a[i][j], a[t][t])) != 0) {
            for (std::size_t c = t; c < cols; ++c) a[t][c] += a[i][c];
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (!found) break;
    if (sgn(a[t][t]) < 0) col_negate(t);
  }
  SmithForm out;
  for (std::size_t i = 0; i < t; ++i) out.diagonal.push_back(a[i][i]);
  out.v = std::move(v);
  out.v_inv = std::move(vi);
  return out;
}

// ---------------------------------------------------------------- AbGroup

AbGroup::AbGroup() : AbGroup(from_presentation(0, {})) {}

AbGroup AbGroup::from_presentation(std::size_t m, const IntMatrix& relations, std::vector<std::string> names) {
  auto d = std::make_shared<GroupData>();
  d->m = m;
  if (names.empty())
    for (std::size_t i = 0; i < m; ++i) names.push_back("g" + std::to_string(i + 1));
  if (names.size() != m) throw InputError("generator name count does not match the generator count");
  d->names = std::move(names);
  d->relations = relations;
  d->snf = smith_normal_form(relations, m);
  const auto& diag = d->snf.diagonal;
  d->first_torsion = static_cast<std::size_t>(std::count(diag.begin(), diag.end(), 1));
  d->torsion.assign(diag.begin() + static_cast<long>(d->first_torsion), diag.end());
  d->rank = m - diag.size();
  return AbGroup(std::move(d));
}

AbGroup AbGroup::free(std::size_t rank) { return from_presentation(rank, {}); }

AbGroup AbGroup::from_type(std::size_t rank, const std::vector<long>& cyclic) {
  const std::size_t m = cyclic.size() + rank;
  IntMatrix rel;
  for (std::size_t i = 0; i < cyclic.size(); ++i) {
    if (cyclic[i] == 0) continue;
    IntVec row(m, 0);
    row[i] = cyclic[i];
    rel.push_back(row);
  }
  return from_presentation(m, rel);
}

std::size_t AbGroup::generator_count() const { return data_->m; }
const std::vector<std::string>& AbGroup::generator_names() const { return data_->names; }
const IntMatrix& AbGroup::relations() const { return data_->relations; }
std::size_t AbGroup::rank() const { return data_->rank; }
const IntVec& AbGroup::torsion() const { return data_->torsion; }

mpz_class AbGroup::order() const {
  if (!is_finite()) throw InputError("order of an infinite group");
  mpz_class o = 1;
  for (const auto& d : torsion()) o *= d;
  return o;
}

std::string AbGroup::type_str() const {
  std::vector<std::string> parts;
  if (rank() == 1) parts.push_back("Z");
  if (rank() > 1) parts.push_back("Z^" + std::to_string(rank()));
  for (const auto& d : torsion()) parts.push_back("Z/" + d.get_str());
  if (parts.empty()) return "1";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " x " + parts[i];
  return s;
}

GroupElem AbGroup::identity() const { return from_coords(IntVec(torsion().size() + rank(), 0)); }

GroupElem AbGroup::generator(std::size_t i) const {
  if (i >= data_->m) throw InputError("generator index out of range");
  IntVec e(data_->m, 0);
  e[i] = 1;
  return element(e);
}

GroupElem AbGroup::element(const IntVec& exps) const {
  const auto& d = *data_;
  if (exps.size() != d.m) throw InputError("exponent vector has the wrong length");
  const std::size_t s = d.snf.diagonal.size();
  IntVec coords;
  auto y = [&](std::size_t c) {
    mpz_class sum = 0;
    for (std::size_t j = 0; j < d.m; ++j)
      if (sgn(exps[j]) != 0) sum += exps[j] * d.snf.v[j][c];
    return sum;
  };
  for (std::size_t k = 0; k < d.torsion.size(); ++k) coords.push_back(y(d.first_torsion + k));
  for (std::size_t c = s; c < d.m; ++c) coords.push_back(y(c));
  return from_coords(std::move(coords));
}

GroupElem AbGroup::element(const std::vector<long>& exps) const {
  IntVec e;
  for (long x : exps) e.emplace_back(x);
  return element(e);
}

GroupElem AbGroup::from_coords(IntVec coords) const {
  if (coords.size() != torsion().size() + rank()) throw InputError("coordinate vector has the wrong length");
  for (std::size_t k = 0; k < torsion().size(); ++k) coords[k] = mod_nonneg(coords[k], torsion()[k]);
  GroupElem g;
  g.owner_ = data_;
  g.coords_ = std::move(coords);
  return g;
}

IntVec AbGroup::exponents(const GroupElem& g) const {
  if (g.owner_ != data_) throw InputError("element belongs to another group");
  const auto& d = *data_;
  const std::size_t s = d.snf.diagonal.size();
  IntVec y(d.m, 0);
  for (std::size_t k = 0; k < d.torsion.size(); ++k) y[d.first_torsion + k] = g.coords_[k];
  for (std::size_t c = s; c < d.m; ++c) y[c] = g.coords_[d.torsion.size() + c - s];
  IntVec x(d.m, 0);
  for (std::size_t c = 0; c < d.m; ++c) {
    if (sgn(y[c]) == 0) continue;
    for (std::size_t j = 0; j < d.m; ++j) x[j] += y[c] * d.snf.v_inv[c][j];
  }
  return x;
}

std::vector<GroupElem> AbGroup::elements() const {
  if (!is_finite()) throw InputError("cannot list the elements of an infinite group");
  std::vector<GroupElem> out;
  IntVec c(torsion().size(), 0);
  while (true) {
    out.push_back(from_coords(c));
    std::size_t k = c.size();
    while (k > 0) {
      --k;
      if (++c[k] < torsion()[k]) break;
      c[k] = 0;
      if (k == 0) return out;
    }
    if (c.empty()) return out;
  }
}

// ---------------------------------------------------------------- GroupElem

AbGroup GroupElem::group() const {
  if (!owner_) throw InputError("element has no group");
  return AbGroup(owner_);
}

bool GroupElem::is_identity() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const mpz_class& x) { return sgn(x) == 0; });
}

GroupElem GroupElem::operator*(const GroupElem& o) const {
  if (owner_ != o.owner_) throw InputError("elements of different groups");
  IntVec c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
  return group().from_coords(std::move(c));
}

GroupElem GroupElem::inverse() const {
  IntVec c = coords_;
  for (auto& x : c) x = -x;
  return group().from_coords(std::move(c));
}

GroupElem GroupElem::pow(const mpz_class& k) const {
  IntVec c = coords_;
  for (auto& x : c) x *= k;
  return group().from_coords(std::move(c));
}

std::optional<mpz_class> GroupElem::order() const {
  const auto& tor = owner_->torsion;
  for (std::size_t i = tor.size(); i < coords_.size(); ++i)
    if (sgn(coords_[i]) != 0) return std::nullopt;
  mpz_class o = 1;
  for (std::size_t i = 0; i < tor.size(); ++i) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), coords_[i].get_mpz_t(), tor[i].get_mpz_t());
    const mpz_class part = tor[i] / g;
    mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), part.get_mpz_t());
  }
  return o;
}

bool GroupElem::operator==(const GroupElem& o) const { return owner_ == o.owner_ && coords_ == o.coords_; }

bool GroupElem::operator<(const GroupElem& o) const { return coords_ < o.coords_; }

std::string GroupElem::str() const {
  const std::size_t nt = owner_ ? owner_->torsion.size() : 0;
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i == nt && nt > 0) s += "|";
    else if (i > 0) s += ",";
    s += coords_[i].get_str();
  }
  return s + ")";
}

// ---------------------------------------------------------------- subgroups and homs

std::vector<GroupElem> generated_subgroup(const AbGroup& g, const std::vector<GroupElem>& gens) {
  for (const auto& x : gens) {
    if (x.group() != g) throw InputError("generator belongs to another group");
    if (!x.order()) throw InputError("generated_subgroup needs elements of finite order");
  }
  std::set<GroupElem> seen{g.identity()};
  std::vector<GroupElem> frontier{g.identity()};
  while (!frontier.empty()) {
    std::vector<GroupElem> next;
    for (const auto& a : frontier)
      for (const auto& x : gens) {
        GroupElem b = a * x;
        if (seen.insert(b).second) next.push_back(std::move(b));
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::optional<GroupHom> GroupHom::make(const AbGroup& src, const AbGroup& dst, std::vector<GroupElem> images) {
  if (images.size() != src.generator_count()) throw InputError("need one image per source generator");
  for (const auto& im : images)
    if (im.group() != dst) throw InputError("image belongs to another group");
  for (const auto& rel : src.relations()) {
    GroupElem acc = dst.identity();
    for (std::size_t j = 0; j < rel.size(); ++j)
      if (sgn(rel[j]) != 0) acc = acc * images[j].pow(rel[j]);
    if (!acc.is_identity()) return std::nullopt;
  }
  return GroupHom(src, dst, std::move(images));
}

GroupElem GroupHom::operator()(const GroupElem& g) const {
  const IntVec x = src_.exponents(g);
  GroupElem acc = dst_.identity();
  for (std::size_t j = 0; j < x.size(); ++j)
    if (sgn(x[j]) != 0) acc = acc * images_[j].pow(x[j]);
  return acc;
}

}  // namespace xprod
