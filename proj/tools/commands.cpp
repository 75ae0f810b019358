#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "report.hpp"

namespace xprod::cli {

namespace {

struct Common {
  std::string field;
  std::string seed = "0x5EED";
  unsigned threads = 1;
  bool json_out = false;
  bool timings = false;

  const Field& field_or(const char* fallback) const { return Field::parse(field.empty() ? fallback : field); }
  std::uint64_t seed_value() const {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(seed, &used, 0);
      if (used != seed.size()) throw std::invalid_argument(seed);
      return v;
    } catch (const std::exception&) {
      throw InputError("seed must be an integer, got '" + seed + "'");
    }
  }
};

void add_common(CLI::App* app, Common& c, bool with_field = true) {
  if (with_field) app->add_option("--field", c.field, "Ground field: Q, Fp:5, Q(i), Fp:5(sqrt:2)");
  app->add_option("--seed", c.seed, "Seed for randomized sweeps (default 0x5EED)");
  app->add_option("--threads", c.threads, "Worker threads for sweeps")->check(CLI::Range(1u, 256u));
  app->add_flag("--json", c.json_out, "Machine-readable output");
  app->add_flag("--timings", c.timings, "Append wall-clock time (breaks byte-identical output)");
}

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    ss << in.rdbuf();
  }
  return ss.str();
}

std::size_t parse_size(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoul(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("bad " + what + " '" + s + "'");
  }
}

std::string matrix_name(const Matrix& m) {
  const Matrix id = Matrix::identity(field_of(m), m.rows());
  if (m == id) return "Id";
  if (m == -id) return "-Id";
  return "M";
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  Common c;
  std::string builtin, input;
  std::size_t samples = 1000;
  bool no_forms = false, epsilon = false;
};

CrossProduct builtin_product(const std::string& name, const Field& f) {
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  if (head == "x1" && colon == std::string::npos) return build_three_fold(1, f.one(), f);
  if (head == "xm1" && colon == std::string::npos) return build_three_fold(-1, f.one(), f);
  if (head == "c0" && colon == std::string::npos) return build_c0(f);
  if (head == "quat" && colon == std::string::npos) return build_quaternion(f);
  if (colon != std::string::npos) {
    const std::size_t n = parse_size(name.substr(colon + 1), "dimension");
    if (head == "star") return build_star(QuadSpace::euclidean(f, n));
    if (head == "onefold") {
      if (n == 0 || n % 2 != 0) throw InputError("onefold:n needs an even dimension n");
      return build_one_fold(standard_complex_structure(f, n / 2)).product;
    }
  }
  throw InputError("unknown builtin '" + name + "' (x1, xm1, c0, quat, star:n, onefold:n)");
}

std::string sweep_detail(const AxiomCheck& a, std::uint64_t seed) {
  std::ostringstream s;
  s << (a.exhaustive ? "exhaustive" : "sampled") << ", " << a.checked << " tuples";
  if (!a.exhaustive) s << ", seed 0x" << std::hex << std::uppercase << seed;
  return s.str();
}

void cmd_verify(const VerifyArgs& a, Report& rep) {
  if (a.builtin.empty() == a.input.empty()) throw InputError("give exactly one of --builtin and --input");
  const Field& fallback = a.c.field_or("Q");
  const CrossProduct x = a.builtin.empty() ? cross_product_from_json(parse_json_text(read_input(a.input)), fallback)
                                           : builtin_product(a.builtin, fallback);
  rep.set_field(x.field().name());
  rep.value("product", a.builtin.empty() ? "input " + a.input : "builtin " + a.builtin);
  rep.value("arity", x.arity());
  rep.value("dim", x.dim());
  if (!x.form()) throw InputError("the product carries no bilinear form; add a gram matrix");
  VerifyOptions opt;
  opt.seed = a.c.seed_value();
  opt.threads = a.c.threads;
  opt.samples = a.samples;

  const AxiomReport ar = verify_axioms(x, *x.form(), opt);
  auto axiom = [&](const char* name, const AxiomCheck& ck) {
    Check c{name, ck.pass, sweep_detail(ck, opt.seed), {}};
    if (!ck.witness.empty()) c.witnesses.push_back(ck.witness);
    rep.check(c);
  };
  axiom("A1 b(X(v..), v_i) = 0", ar.a1);
  axiom("A2 b(X(v..), X(v..)) = det b(v_i, v_j)", ar.a2);

  if (a.epsilon) {
    if (x.arity() != 3 || x.dim() != 8) throw InputError("--epsilon applies to 3-fold products on 8-dim spaces");
    json types = json::array();
    for (int eps : {1, -1}) {
      const EpsilonReport er = satisfies_epsilon_identity(x, *x.form(), eps, opt.threads);
      rep.value(eps > 0 ? "epsilon_plus" : "epsilon_minus", er.pass,
                std::string(er.pass ? "holds" : "fails") + " on " + std::to_string(er.checked) + " tuples" +
                    (er.witness.empty() ? "" : ", witness " + er.witness));
      if (er.pass) types.push_back(eps > 0 ? "I" : "II");
    }
    rep.value("type", types, types.empty() ? "neither" : join(types.get<std::vector<std::string>>(), ", "));
  }

  if (!a.no_forms) {
    const AdmissibleForms af = admissible_forms(x, opt);
    rep.value("linear_solution_dim", af.linear_dim);
    json mus = json::array();
    std::vector<std::string> mtxt;
    for (const auto& m : af.mus) {
      mus.push_back(m.str());
      mtxt.push_back(m.str());
    }
    if (x.arity() >= 2) rep.value("admissible_mu", mus, "{" + join(mtxt, ", ") + "} (forms mu * b)");
    if (!af.note.empty()) rep.value("forms_note", af.note);
    bool ref_ok = af.reference_in_solution;
    if (x.arity() >= 2) {
      bool has_one = false;
      for (const auto& m : af.mus) has_one = has_one || m.is_one();
      ref_ok = ref_ok && has_one;
    }
    rep.check("attached form is admissible", ref_ok);
  }
}

// ---------------------------------------------------------------- grading

struct GradingArgs {
  Common c;
  std::string action, builtin, input, other_builtin, other_input, id;
  bool oracle = false;
  std::size_t n = 0;
};

bool is_n1_id(const std::string& s) { return s.rfind("n1:", 0) == 0; }

std::pair<std::size_t, std::size_t> parse_pq(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw InputError("expected n1:p,q");
  return {parse_size(s.substr(3, comma - 3), "p"), parse_size(s.substr(comma + 1), "q")};
}

Grading builtin_grading(const std::string& name, const Common& c) {
  if (name == "cartan") return cartan_grading(c.field_or("Q"));
  if (name == "cd") return cd_grading(c.field_or("Q"));
  if (is_n1_id(name)) {
    const auto [p, q] = parse_pq(name);
    return fine_n1(p, q, p + 2 * q, c.field_or("Q(i)")).grading;
  }
  throw InputError("unknown builtin grading '" + name + "' (cartan, cd, n1:p,q)");
}

Grading load_grading(const std::string& builtin, const std::string& input, const Common& c, const char* which) {
  if (builtin.empty() == input.empty())
    throw InputError(std::string("give exactly one builtin or input for the ") + which + " grading");
  if (!builtin.empty()) return builtin_grading(builtin, c);
  return grading_from_json(parse_json_text(read_input(input)), c.field_or("Q"));
}

void grading_checks(const Grading& g, Report& rep, const std::string& label) {
  const GradingReport gr = verify_grading(g);
  rep.check({label + "X maps components into the product degree", gr.pass,
             std::to_string(gr.checked) + " homogeneous tuples, " + std::to_string(gr.violations) + " violations",
             gr.witnesses});
}

void describe_grading(const Grading& g, Report& rep, const std::string& prefix) {
  rep.value(prefix + "structure", to_string(g.structure()));
  rep.value(prefix + "group", g.group().type_str());
  rep.value(prefix + "support_size", g.support().size());
  rep.value(prefix + "fine", is_fine(g), is_fine(g) ? "yes" : "no");
}

// Gradings loaded separately carry distinct group objects; identical presentations are identified.
std::optional<Grading> onto_group(const Grading& g, const AbGroup& target) {
  if (g.group() == target) return g;
  if (g.group().generator_names() != target.generator_names() || g.group().relations() != target.relations())
    return std::nullopt;
  std::vector<GroupElem> degrees;
  for (const auto& d : g.degrees()) degrees.push_back(target.from_coords(d.coords()));
  return g.with_degrees(target, degrees);
}

bool on_cayley(const Grading& g) {
  return g.structure() == GradedStructure::TripleC || g.structure() == GradedStructure::X1;
}

void cmd_grading(const GradingArgs& a, Report& rep) {
  if (a.action == "classify") {
    const Grading g = load_grading(a.builtin, a.input, a.c, "first");
    rep.set_field(g.field().name());
    describe_grading(g, rep, "");
    grading_checks(g, rep, "");
    if (on_cayley(g)) {
      const Classification83 cl = classify_83(g);
      rep.value("classification", to_json(cl), cl.str());
    } else if (g.structure() == GradedStructure::Star) {
      const DeltaMap d = delta_of(g);
      json entries = json::array();
      std::vector<std::string> txt;
      for (const auto& [e, k] : d.entries()) {
        entries.push_back({{"degree", to_json(e)}, {"dim", k}});
        txt.push_back(e.str() + " -> " + std::to_string(k));
      }
      rep.value("delta", entries, join(txt, ", "));
      rep.value("h", to_json(d.h()), d.h().str());
      if (!g.form()) throw InputError("star grading has no form");
      const FormCompatibility fc = form_compatibility(g, *g.form());
      rep.check("b(V_g, V_g') = 0 unless g g' = h", fc.h == d.h(), "h = " + fc.h.str());
      rep.check("components are nondegenerate or isotropic", component_dichotomy_holds(g, *g.form(), fc.h));
    } else {
      throw InputError("classification covers 3c, x1 and star gradings");
    }
  } else if (a.action == "isofine") {
    const Grading g1 = load_grading(a.builtin, a.input, a.c, "first");
    const Grading g2_raw = load_grading(a.other_builtin, a.other_input, a.c, "second");
    const std::optional<Grading> moved = onto_group(g2_raw, g1.group());
    const Grading& g2 = moved ? *moved : g2_raw;
    rep.set_field(g1.field().name());
    describe_grading(g1, rep, "first_");
    describe_grading(g2, rep, "second_");
    grading_checks(g1, rep, "first: ");
    grading_checks(g2, rep, "second: ");
    bool iso = false;
    if (!moved) {
      rep.value("note", "the grading groups have different presentations");
    } else if (on_cayley(g1) && on_cayley(g2)) {
      iso = iso_83(g1, g2);
    } else if (g1.structure() == GradedStructure::Star && g2.structure() == GradedStructure::Star) {
      iso = n1_isomorphic(delta_of(g1), delta_of(g2));
    } else {
      throw InputError("isomorphism test covers pairs of 3c/x1 gradings or pairs of star gradings");
    }
    rep.value("isomorphic", iso, iso ? "yes" : "no");
  } else if (a.action == "weyl") {
    if (a.id.empty()) throw InputError("weyl needs --id");
    const FineGradingId id = parse_fine_grading_id(a.id);
    const mpz_class w = weyl_order(id);
    rep.value("id", to_string(id));
    rep.value("weyl_order", w.get_str());
    if (a.oracle) {
      WeylSearch s;
      if (id.kind == FineGradingId::CD) {
        rep.set_field("Q");
        s = weyl_search_cd(a.c.threads);
      } else if (id.kind == FineGradingId::N1) {
        const Field& f = a.c.field_or("Q(i)");
        rep.set_field(f.name());
        s = weyl_search_n1(id.p, id.q, f);
      } else {
        throw InputError("search oracle is available for cd and n1:p,q");
      }
      rep.value("search_self_equivalences", s.self_equivalences);
      rep.value("search_weyl_order", s.weyl_order);
      rep.check("search agrees with the formula", mpz_class(std::to_string(s.weyl_order)) == w,
                std::to_string(s.weyl_order) + " vs " + w.get_str());
    }
  } else if (a.action == "finelist") {
    if (a.n < 3) throw InputError("finelist needs --n >= 3");
    const Field& f = a.c.field_or("Q(i)");
    rep.set_field(f.name());
    json rows = json::array();
    std::vector<std::string> txt;
    for (std::size_t q = 0; 2 * q <= a.n; ++q) {
      const std::size_t p = a.n - 2 * q;
      const FineN1 fine = fine_n1(p, q, a.n, f);
      FineGradingId id{FineGradingId::N1, p, q, 0};
      const std::string w = weyl_order(id).get_str();
      rows.push_back({{"p", p}, {"q", q}, {"universal_group", fine.universal.type_str()}, {"weyl_order", w}});
      txt.push_back("(p,q) = (" + std::to_string(p) + "," + std::to_string(q) + "): U = " +
                    fine.universal.type_str() + ", |W| = " + w);
      rep.check("(" + std::to_string(p) + "," + std::to_string(q) + ") is fine", is_fine(fine.grading));
    }
    rep.value("gradings", rows, "\n  " + join(txt, "\n  "));
  } else {
    throw InputError("unknown grading action '" + a.action + "'");
  }
}

// ---------------------------------------------------------------- spin

struct SpinArgs {
  Common c;
  std::string action, vectors, basis = "cd", target = "unit_sphere", det;
  std::size_t n = 0;
};

void cmd_spin(const SpinArgs& a, Report& rep) {
  if (a.action == "triple") {
    const Field& f = a.c.field_or("Q");
    rep.set_field(f.name());
    if (a.basis != "cd" && a.basis != "std") throw InputError("--basis must be cd or std");
    const Cayley c(f, a.basis == "cd" ? CayleyBasis::CD : CayleyBasis::Standard);
    if (a.vectors.empty()) throw InputError("triple needs --vectors");
    std::vector<Vec> xs;
    std::stringstream ss(a.vectors);
    for (std::string tok; std::getline(ss, tok, ',');) xs.push_back(c.parse(tok));
    const SpinElement s = spin_element_from_vectors(c, xs);
    const TriIsometry& t = s.triple;
    rep.value("triple", to_json(t),
              "(" + matrix_name(t.f0) + ", " + matrix_name(t.f1) + ", " + matrix_name(t.f2) + ")");
    bool squares = true;
    for (const auto& x : xs) {
      const Matrix p = clifford_phi(c, x);
      squares = squares && p * p == c.norm(x) * Matrix::identity(f, 16);
    }
    rep.check("Phi(x)^2 = n(x) Id", squares);
    rep.check("related triple f0(x.y) = f1(x).f2(y)", is_related_triple(c, t));
    rep.check("cyclic identities", cyclic_identities_hold(c, t));
    rep.check("f2 preserves {xyz}", is_automorphism(t.f2, build_triple_3c(f, c.basis())));
    rep.check("f0(1) = 1", t.f0 * c.unit() == c.unit());
  } else if (a.action == "orbits") {
    const Field& f = a.c.field_or("Fp:3");
    rep.set_field(f.name());
    const OrbitTarget tg = parse_orbit_target(a.target);
    const OrbitCensus oc = orbit_census(f, tg, a.c.seed_value());
    rep.value("target", to_string(tg));
    rep.value("generators", oc.generators);
    rep.value("orbit_size", oc.orbit_size);
    rep.value("target_size", oc.target_size);
    rep.check("orbit equals the target set", oc.equal,
              std::to_string(oc.orbit_size) + (oc.equal ? " = " : " != ") + std::to_string(oc.target_size));
  } else if (a.action == "lie") {
    if (a.n < 2) throw InputError("lie needs --n >= 2");
    const Field& f = a.c.field_or("Q");
    rep.set_field(f.name());
    const QuadSpace b = QuadSpace::euclidean(f, a.n);
    const LieBasis l = lie_otilde(b);
    rep.value("n", a.n);
    rep.value("dim", l.dim());
    rep.value("contains_identity", l.contains_identity, l.contains_identity ? "yes" : "no");
    bool ok = true;
    for (const auto& m : l.basis) ok = ok && m.transpose() * b.gram() + b.gram() * m == m.trace() * b.gram();
    rep.check("f^T B + B f = tr(f) B on the basis", ok);
  } else if (a.action == "witness") {
    if (a.n < 2 || a.det.empty()) throw InputError("witness needs --n and --det");
    const Field& f = a.c.field_or("Q");
    const QuadSpace b = QuadSpace::euclidean(f, a.n);
    const Scalar r = f.parse_scalar(a.det);
    const Matrix w = witness_with_det(b, r);
    const Field& wf = field_of(w);
    rep.set_field(wf.name());
    rep.value("n", a.n);
    rep.value("det", to_json(det(w)));
    rep.value("witness", to_json(w), w.str());
    rep.check("witness lies in O~", in_O_tilde(w, b.in(wf)));
    rep.check("det = r", det(w) == r.in(wf));
    rep.check("det^(n-2) = 1", det_root_check(w, b.in(wf)) == r.in(wf));
  } else {
    throw InputError("unknown spin action '" + a.action + "'");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact cross products, automorphism groups and gradings"};
  app.name("xprod");
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check the cross product axioms and admissible forms");
  verify->add_option("--builtin", va.builtin, "x1, xm1, c0, quat, star:n, onefold:n");
  verify->add_option("--input", va.input, "CrossProduct JSON file ('-' for stdin)");
  verify->add_option("--samples", va.samples, "Sample count when sweeps are not exhaustive");
  verify->add_flag("--no-forms", va.no_forms, "Skip the admissible form computation");
  verify->add_flag("--epsilon", va.epsilon, "Test the epsilon identity for 3-fold products on 8-dim spaces");
  add_common(verify, va.c);

  GradingArgs ga;
  auto* grading = app.add_subcommand("grading", "Classify gradings, compare them, Weyl groups");
  grading->add_option("action", ga.action, "classify | isofine | weyl | finelist")
      ->required()
      ->check(CLI::IsMember({"classify", "isofine", "weyl", "finelist"}));
  grading->add_option("--builtin", ga.builtin, "cartan, cd, n1:p,q");
  grading->add_option("--input", ga.input, "Grading JSON file ('-' for stdin)");
  grading->add_option("--other-builtin", ga.other_builtin, "Second grading for isofine");
  grading->add_option("--other-input", ga.other_input, "Second grading JSON for isofine");
  grading->add_option("--id", ga.id, "Fine grading id: n1:p,q, cartan, cd, g2-cartan, g2-z2, onefold:s");
  grading->add_flag("--oracle", ga.oracle, "Confirm the Weyl order by direct search");
  grading->add_option("--n", ga.n, "Dimension for finelist");
  add_common(grading, ga.c);

  SpinArgs sa;
  auto* spin = app.add_subcommand("spin", "Spin elements, orbits, Lie algebras, determinant witnesses");
  spin->add_option("action", sa.action, "triple | orbits | lie | witness")
      ->required()
      ->check(CLI::IsMember({"triple", "orbits", "lie", "witness"}));
  spin->add_option("--vectors", sa.vectors, "Comma-separated C0 elements, e.g. w1,w1");
  spin->add_option("--basis", sa.basis, "cd or std");
  spin->add_option("--target", sa.target, "unit_sphere, isotropic or pair");
  spin->add_option("--n", sa.n, "Dimension");
  spin->add_option("--det", sa.det, "Prescribed determinant for witness");
  add_common(spin, sa.c);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const std::string command = "xprod " + join(args, " ");
  Report rep(command);
  const Common* common = verify->parsed() ? &va.c : grading->parsed() ? &ga.c : &sa.c;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (verify->parsed()) cmd_verify(va, rep);
    if (grading->parsed()) cmd_grading(ga, rep);
    if (spin->parsed()) cmd_spin(sa, rep);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const RequiresClosedField& e) {
    err << "input error: requires a larger field: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (common->timings)
    rep.timing(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
  if (common->json_out) {
    rep.print_json(out);
  } else {
    rep.print_text(out);
  }
  return rep.pass() ? 0 : 1;
}

}  // namespace xprod::cli
