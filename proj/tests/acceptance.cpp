// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero if any criterion fails.
// Tolerances: all algebraic comparisons are exact; the only tolerances are the wall-clock budgets below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "xprod/serialize.hpp"

using namespace xprod;

namespace {

constexpr double kBudget1 = 60, kBudget2 = 300, kBudget6 = 30, kBudget7 = 120, kBudget10 = 600;

const Field& Q() { return Field::rationals(); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void run(const std::string& label, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && s > budget_s) o.require(false, "runtime over budget");
  if (!o.pass) ++failures;
  std::printf("%s %s (%.2fs%s)%s%s\n", o.pass ? "PASS" : "FAIL", label.c_str(), s,
              budget_s > 0 ? (", budget " + std::to_string(static_cast<int>(budget_s)) + "s").c_str() : "",
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

bool same_mus(const std::vector<Scalar>& got, std::vector<Scalar> want) {
  if (got.size() != want.size()) return false;
  for (const auto& m : got) {
    auto it = std::find(want.begin(), want.end(), m);
    if (it == want.end()) return false;
    want.erase(it);
  }
  return true;
}

void criterion1(Outcome& o) {
  for (const Field* f : {&Q(), &Field::prime(5)}) {
    std::vector<std::pair<std::string, CrossProduct>> xs;
    xs.emplace_back("c0", build_c0(*f));
    xs.emplace_back("x1", build_three_fold(1, f->one(), *f));
    xs.emplace_back("xm1", build_three_fold(-1, f->one(), *f));
    xs.emplace_back("quat", build_quaternion(*f));
    for (std::size_t n = 3; n <= 6; ++n) xs.emplace_back("star:" + std::to_string(n), build_star(QuadSpace::euclidean(*f, n)));
    for (std::size_t s = 1; s <= 3; ++s)
      xs.emplace_back("onefold:" + std::to_string(2 * s), build_one_fold(standard_complex_structure(*f, s)).product);
    for (const auto& [name, x] : xs) {
      VerifyOptions opt;
      opt.threads = 4;
      const AxiomReport r = verify_axioms(x, *x.form(), opt);
      // n^{2r} decides exhaustive versus 1000 samples for the norm identity.
      double tuples = 1;
      for (std::size_t i = 0; i < 2 * x.arity(); ++i) tuples *= static_cast<double>(x.dim());
      const bool want_exhaustive = tuples <= 3e6;
      o.require(r.pass(), name + " over " + f->name() + " fails: " + r.a1.witness + r.a2.witness);
      o.require(r.a2.exhaustive == want_exhaustive, name + " sweep mode");
      if (!want_exhaustive) o.require(r.a2.checked == 1000, name + " sample count");
    }
  }
}

void criterion2(Outcome& o) {
  for (int eps : {1, -1}) {
    const CrossProduct x = build_three_fold(eps, Q().one(), Q());
    const EpsilonReport r = satisfies_epsilon_identity(x, *x.form(), eps, 4);
    o.require(r.pass, "eps " + std::to_string(eps) + ": " + r.witness);
    o.require(r.checked == 262144, "eps " + std::to_string(eps) + " checked " + std::to_string(r.checked));
  }
}

void criterion3(Outcome& o) {
  const Field& f5 = Field::prime(5);
  const Field& f7 = Field::prime(7);
  o.require(same_mus(admissible_forms(build_c0(Q())).mus, {Q().one()}), "(7,2) is not {b_n}");
  o.require(same_mus(admissible_forms(build_three_fold(1, Q().one(), Q())).mus, {Q().one(), Q().from_int(-1)}),
            "(8,3) is not {b_n, -b_n}");
  o.require(same_mus(admissible_forms(build_star(QuadSpace::euclidean(f5, 4))).mus, {f5.one(), f5.from_int(-1)}),
            "star n=4 over F5 is not {b, -b}");
  // F7 contains the cube roots of unity 1, 2, 4.
  const auto m7 = admissible_forms(build_star(QuadSpace::euclidean(f7, 5))).mus;
  o.require(same_mus(m7, {f7.one(), f7.from_int(2), f7.from_int(4)}), "star n=5 over F7 does not give 3 forms");
  for (const auto& m : m7) o.require(m.pow(3).is_one(), "mu^3 != 1");
}

void criterion4(Outcome& o) {
  const Field& f5 = Field::prime(5);
  const QuadSpace b = QuadSpace::euclidean(f5, 4);
  const Matrix w = witness_with_det(b, f5.from_int(4));
  o.require(det(w) == f5.from_int(4), "n=4 F5: det != 4");
  o.require(in_O_tilde(w, b), "n=4 F5: witness not in O~");
  o.require(det_root_check(w, b) == f5.from_int(4) && f5.from_int(4).pow(2).is_one(), "n=4 F5: det root check");
  // The second half: n = 5 over Q with r = -1.
  try {
    const QuadSpace b5 = QuadSpace::euclidean(Q(), 5);
    const Matrix w5 = witness_with_det(b5, Q().from_int(-1));
    const Field& ext = field_of(w5);
    o.require(ext.is_extension(), "n=5 Q r=-1: witness not in a quadratic extension");
    o.require(det(w5) == ext.from_int(-1) && in_O_tilde(w5, b5.in(ext)), "n=5 Q r=-1: witness does not verify");
  } catch (const InputError& e) {
    o.require(false, std::string("n=5 Q r=-1: ") + e.what() + " [(-1)^(n-2) = -1, so no element of O~ has det -1]");
  }
}

void criterion4_supplement(Outcome& o) {
  const QuadSpace b = QuadSpace::euclidean(Q(), 4);
  const Matrix w = witness_with_det(b, Q().from_int(-1));
  const Field& ext = field_of(w);
  o.require(ext.is_extension(), "witness stayed over Q");
  o.require(det(w) == ext.from_int(-1), "det != -1");
  o.require(in_O_tilde(w, b.in(ext)), "not in O~");
}

void criterion5(Outcome& o) {
  struct Case {
    const Field* f;
    std::size_t n, dim;
    bool id;
  };
  const Case cases[] = {{&Q(), 5, 10, false}, {&Field::prime(3), 5, 11, true}, {&Q(), 6, 15, false},
                        {&Field::prime(7), 4, 6, false}};
  for (const auto& c : cases) {
    const LieBasis l = lie_otilde(QuadSpace::euclidean(*c.f, c.n));
    o.require(l.dim() == c.dim && l.contains_identity == c.id,
              "n=" + std::to_string(c.n) + " " + c.f->name() + ": dim " + std::to_string(l.dim()));
  }
  bool excluded = false;
  try {
    Field::prime(2);
  } catch (const InputError&) {
    excluded = true;
  }
  o.require(excluded, "F2 is not excluded");
}

void criterion6(Outcome& o) {
  std::mt19937_64 rng(0x5EED);
  std::size_t elements = 0;
  for (CayleyBasis cb : {CayleyBasis::Standard, CayleyBasis::CD}) {
    const Cayley c(Q(), cb);
    const CrossProduct triple = build_triple_3c(Q(), cb);
    for (std::size_t i = 0; i < 8; ++i) {
      const Vec x = c.basis_vec(i);
      const Matrix p = clifford_phi(c, x);
      o.require(p * p == c.norm(x) * Matrix::identity(Q(), 16), "Phi(x)^2 on basis " + c.label(i));
    }
    auto rand_c0 = [&] {
      Vec v;
      do {
        v = c.zero();
        for (auto& s : v) s = Q().random(rng, 3);
        v = sub(v, scale(c.polar(v, c.unit()) / c.polar(c.unit(), c.unit()), c.unit()));
      } while (c.norm(v).is_zero());
      return v;
    };
    std::vector<std::vector<Vec>> lists;
    const auto c0 = c.c0_basis();
    for (std::size_t i = 0; i < c0.size(); ++i)
      for (std::size_t j = 0; j < c0.size(); ++j) {
        const Scalar nn = c.norm(c0[i]) * c.norm(c0[j]);
        if (nn.is_zero()) continue;
        lists.push_back({c0[i], scale(nn.inverse(), c0[j])});
      }
    for (int t = 0; t < 12; ++t) {
      std::vector<Vec> xs;
      const std::size_t half = 1 + static_cast<std::size_t>(t % 3);
      for (std::size_t k = 0; k < half; ++k) xs.push_back(rand_c0());
      for (std::size_t k = 0; k < half; ++k) xs.push_back(scale(c.norm(xs[k]).inverse(), xs[k]));
      std::shuffle(xs.begin(), xs.end(), rng);
      lists.push_back(xs);
    }
    for (const auto& xs : lists) {
      const SpinElement s = spin_element_from_vectors(c, xs);
      ++elements;
      o.require(is_automorphism(s.triple.f2, triple), "rho- does not preserve {xyz}");
      o.require(is_related_triple(c, s.triple), "not a related triple");
      o.require(cyclic_identities_hold(c, s.triple), "cyclic identities fail");
      if (!o.pass) return;
    }
  }
  o.detail = std::to_string(elements) + " spin elements";
}

void criterion7(Outcome& o) {
  const Field& f3 = Field::prime(3);
  const OrbitCensus unit = orbit_census(f3, OrbitTarget::UnitSphere);
  o.require(unit.equal && unit.orbit_size == unit.target_size, "unit sphere orbit differs from enumeration");
  const OrbitCensus iso = orbit_census(f3, OrbitTarget::Isotropic);
  o.require(iso.equal && iso.orbit_size == iso.target_size, "isotropic orbit differs from enumeration");
  if (o.pass)
    o.detail = "unit " + std::to_string(unit.orbit_size) + " = " + std::to_string(unit.target_size) + ", isotropic " +
               std::to_string(iso.orbit_size) + " = " + std::to_string(iso.target_size);
}

void criterion8(Outcome& o) {
  const Field& qi = Field::parse("Q(i)");
  auto type_of = [&](std::size_t p, std::size_t q) { return fine_n1(p, q, p + 2 * q, qi).universal; };
  o.require(type_of(0, 2).isomorphic(AbGroup::from_type(2, {})), "(0,2) is not Z^2");
  o.require(type_of(2, 1).isomorphic(AbGroup::from_type(1, {4})), "(2,1) is not Z x Z/4");
  o.require(type_of(4, 0).isomorphic(AbGroup::from_type(0, {2, 2, 4})), "(4,0) is not Z/4 x (Z/2)^2");
  o.require(type_of(1, 1).isomorphic(AbGroup::from_type(1, {})), "(1,1) is not Z");
  // (3,0): x1^2 = x2^2 = x3^2 = x1 x2 x3. Oracle: |det| of the relation matrix is the order, and
  // every generator squares to x1 x2 x3 whose square is x1^2 x2^2 x3^2 = (x1 x2 x3)^3.
  const long r[3][3] = {{2, -2, 0}, {0, 2, -2}, {1, -1, -1}};
  const long d = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
                 r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
  const AbGroup u = type_of(3, 0);
  o.require(u.is_finite() && u.order() == std::labs(d), "(3,0) order " + u.order().get_str() + " vs " + std::to_string(d));
  o.require(u.isomorphic(AbGroup::from_presentation(3, {{2, -2, 0}, {0, 2, -2}, {1, -1, -1}})),
            "(3,0) differs from the SNF of its presentation");
}

void criterion9(Outcome& o) {
  const Classification83 cartan = classify_83(cartan_grading(Q()));
  const AbGroup z3 = cartan_grading(Q()).group();
  o.require(cartan.family == 1, "Cartan not family 1");
  if (cartan.family == 1) {
    const AbGroup& g = cartan.alpha[0].group();
    for (std::size_t i = 0; i < 3; ++i) {
      std::vector<long> e(3, 0);
      e[i] = 1;
      o.require(cartan.alpha[i] == g.element(e), "Cartan alpha is not the identity");
    }
  }
  const Grading cd = cd_grading(Q());
  const Classification83 c = classify_83(cd);
  o.require(c.family == 3, "CD not family 3");
  o.require(c.h_sub == cd.group().elements(), "CD: H is not all of (Z/2)^4");
  std::vector<GroupElem> k;
  for (const auto& x : cd.group().elements())
    if (cd.group().exponents(x)[0] % 2 == 0) k.push_back(x);
  o.require(c.k_sub == k, "CD: K is not 0 x (Z/2)^3");

  const AbGroup g = AbGroup::elementary2(5);
  std::mt19937_64 rng(0x5EED);
  auto random_elem = [&] {
    std::vector<long> x(5);
    for (auto& e : x) e = static_cast<long>(rng() % 2);
    return g.element(x);
  };
  auto extend = [&](std::vector<GroupElem> base, std::size_t r) {
    while (base.size() < r) {
      auto trial = base;
      trial.push_back(random_elem());
      if (generated_subgroup(g, trial).size() == (std::size_t{1} << trial.size())) base = trial;
    }
    return base;
  };
  for (int t = 0; t < 20; ++t) {
    const auto hgens = extend({}, 3);
    const auto c2 = classify_83(gamma_GH(g, hgens, Q()));
    o.require(c2.family == 2 && c2.h_sub == generated_subgroup(g, hgens), "Gamma(G,H) round trip " + std::to_string(t));
    const auto kgens = extend({}, 3);
    auto hk = extend(kgens, 4);
    const GroupElem h = hk.back();
    std::shuffle(hk.begin(), hk.end(), rng);
    const auto c3 = classify_83(gamma_GHK(g, hk, kgens, h, Q()));
    o.require(c3.family == 3 && c3.h_sub == generated_subgroup(g, hk) && c3.k_sub == generated_subgroup(g, kgens),
              "Gamma(G,H,K) round trip " + std::to_string(t));
  }
}

void criterion10(Outcome& o) {
  const WeylSearch cd = weyl_search_cd(4);
  o.require(cd.weyl_order == 1344, "CD search gives " + std::to_string(cd.weyl_order));
  o.require(weyl_order(parse_fine_grading_id("cartan")) == 48, "Cartan formula");
  o.require(weyl_order(parse_fine_grading_id("n1:1,1")) == 2, "n1:1,1 formula");
  // The (1,1) star product needs sqrt(-1) (its Gram determinant is -1).
  const WeylSearch n1 = weyl_search_n1(1, 1, Field::parse("Q(i)"));
  o.require(n1.weyl_order == 2, "n1:1,1 search gives " + std::to_string(n1.weyl_order));
  if (o.pass) o.detail = "CD 1344 by search, n1:1,1 = 2 by search over Q(i)";
}

void criterion11(Outcome& o) {
  const std::vector<std::vector<std::string>> commands = {
      {"verify", "--builtin", "x1", "--field", "Q"},
      {"verify", "--builtin", "c0", "--field", "Fp:5", "--json"},
      {"verify", "--builtin", "star:7", "--field", "Fp:5", "--threads", "4", "--no-forms"},
      {"verify", "--builtin", "star:8", "--field", "Q", "--seed", "12345", "--threads", "3", "--no-forms", "--json"},
      {"verify", "--builtin", "onefold:6", "--field", "Q"},
      {"verify", "--builtin", "quat", "--field", "Fp:7"},
      {"grading", "classify", "--builtin", "cartan"},
      {"grading", "classify", "--builtin", "cd", "--json"},
      {"grading", "classify", "--builtin", "n1:2,1"},
      {"grading", "isofine", "--builtin", "cd", "--other-builtin", "cd"},
      {"grading", "weyl", "--id", "cd", "--oracle", "--threads", "4"},
      {"grading", "weyl", "--id", "n1:1,1", "--oracle", "--json"},
      {"grading", "finelist", "--n", "4"},
      {"spin", "triple", "--vectors", "w1,w1"},
      {"spin", "triple", "--vectors", "w1,w2,w3,w5", "--json"},
      {"spin", "orbits", "--field", "Fp:3", "--target", "unit_sphere"},
      {"spin", "orbits", "--field", "Fp:3", "--target", "isotropic", "--seed", "99", "--json"},
      {"spin", "lie", "--n", "5", "--field", "Fp:3"},
      {"spin", "witness", "--n", "4", "--det", "-1", "--field", "Q"},
  };
  for (const auto& args : commands) {
    std::ostringstream a, ae, b, be;
    const int ca = cli::run(args, a, ae), cb = cli::run(args, b, be);
    std::string line;
    for (const auto& s : args) line += s + " ";
    o.require(ca == cb && a.str() == b.str() && ae.str() == be.str(), "output differs: " + line);
    o.require(!a.str().empty(), "no output: " + line);
  }
  if (o.pass) o.detail = std::to_string(commands.size()) + " commands byte-identical across two runs";
}

}  // namespace

int main() {
  run("1 axiom suite", kBudget1, criterion1);
  run("2 epsilon identity on 8^6 tuples", kBudget2, criterion2);
  run("3 admissible forms", 0, criterion3);
  run("4 exact-sequence witnesses", 0, criterion4);
  run("4s supplement: n=4 over Q, r=-1 lands in Q(i)", 0, criterion4_supplement);
  run("5 Lie algebra dichotomy", 0, criterion5);
  run("6 spin machinery", kBudget6, criterion6);
  run("7 orbit census over F3", kBudget7, criterion7);
  run("8 fine (n-1) gradings", 0, criterion8);
  run("9 classification round trips", 0, criterion9);
  run("10 Weyl oracle", kBudget10, criterion10);
  run("11 CLI determinism", 0, criterion11);
  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
