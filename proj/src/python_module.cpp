#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "commands.hpp"
#include "xprod/serialize.hpp"

namespace py = pybind11;
using namespace xprod;

namespace {

// Results cross the boundary as JSON so Python sees plain dicts and strings.
py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& o) {
  return parse_json_text(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

CrossProduct builtin(const std::string& name, const std::string& field) {
  const Field& f = Field::parse(field);
  if (name == "x1") return build_three_fold(1, f.one(), f);
  if (name == "xm1") return build_three_fold(-1, f.one(), f);
  if (name == "c0") return build_c0(f);
  if (name == "quat") return build_quaternion(f);
  if (name.rfind("star:", 0) == 0) return build_star(QuadSpace::euclidean(f, std::stoul(name.substr(5))));
  if (name.rfind("onefold:", 0) == 0)
    return build_one_fold(standard_complex_structure(f, std::stoul(name.substr(8)) / 2)).product;
  throw InputError("unknown builtin '" + name + "'");
}

json axiom_json(const AxiomCheck& a) {
  json j;
  j["pass"] = a.pass;
  j["exhaustive"] = a.exhaustive;
  j["checked"] = a.checked;
  if (!a.witness.empty()) j["witness"] = a.witness;
  return j;
}

}  // namespace

PYBIND11_MODULE(xprod, m) {
  m.doc() = "Exact cross products, automorphism groups and gradings";

  // Translators run newest first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<RequiresClosedField>(m, "RequiresClosedField", PyExc_ArithmeticError);

  py::class_<CrossProduct>(m, "CrossProduct")
      .def_property_readonly("arity", &CrossProduct::arity)
      .def_property_readonly("dim", &CrossProduct::dim)
      .def_property_readonly("field", [](const CrossProduct& x) { return x.field().name(); })
      .def("eval_basis", [](const CrossProduct& x, const std::vector<std::size_t>& idx) {
        std::vector<std::string> out;
        for (const auto& s : x.eval_basis(idx)) out.push_back(s.str());
        return out;
      })
      .def("to_json", [](const CrossProduct& x) { return to_py(to_json(x)); });

  m.def("builtin", &builtin, py::arg("name"), py::arg("field") = "Q",
        "x1, xm1, c0, quat, star:n or onefold:n over the given field");
  m.def(
      "cross_product_from_json", [](const py::object& o) { return cross_product_from_json(from_py(o)); },
      py::arg("doc"));

  m.def(
      "verify_axioms",
      [](const CrossProduct& x, std::uint64_t seed, unsigned threads) {
        if (!x.form()) throw InputError("the product carries no bilinear form");
        VerifyOptions opt;
        opt.seed = seed;
        opt.threads = threads;
        const AxiomReport r = verify_axioms(x, *x.form(), opt);
        json j;
        j["pass"] = r.pass();
        j["a1"] = axiom_json(r.a1);
        j["a2"] = axiom_json(r.a2);
        return to_py(j);
      },
      py::arg("product"), py::arg("seed") = 0x5EED, py::arg("threads") = 1);

  m.def(
      "admissible_mus",
      [](const CrossProduct& x) {
        std::vector<std::string> out;
        for (const auto& mu : admissible_forms(x).mus) out.push_back(mu.str());
        return out;
      },
      py::arg("product"));

  m.def(
      "group_type", [](const py::object& presentation) { return presentation_from_json(from_py(presentation)).type_str(); },
      py::arg("presentation"));

  m.def(
      "fine_n1",
      [](std::size_t p, std::size_t q, const std::string& field) {
        const FineN1 r = fine_n1(p, q, p + 2 * q, Field::parse(field));
        json j;
        j["universal_group"] = r.universal.type_str();
        j["grading"] = to_json(r.grading);
        return to_py(j);
      },
      py::arg("p"), py::arg("q"), py::arg("field") = "Q(i)");

  m.def(
      "builtin_grading",
      [](const std::string& name, const std::string& field) {
        const Field& f = Field::parse(field);
        if (name == "cartan") return to_py(to_json(cartan_grading(f)));
        if (name == "cd") return to_py(to_json(cd_grading(f)));
        throw InputError("unknown builtin grading '" + name + "'");
      },
      py::arg("name"), py::arg("field") = "Q");

  m.def(
      "verify_grading", [](const py::object& doc) { return verify_grading(grading_from_json(from_py(doc))).pass; },
      py::arg("grading"));
  m.def(
      "classify_83", [](const py::object& doc) { return to_py(to_json(classify_83(grading_from_json(from_py(doc))))); },
      py::arg("grading"));
  m.def(
      "is_fine", [](const py::object& doc) { return is_fine(grading_from_json(from_py(doc))); }, py::arg("grading"));

  m.def(
      "weyl_order", [](const std::string& id) { return py::int_(py::str(weyl_order(parse_fine_grading_id(id)).get_str())); },
      py::arg("id"));
  m.def(
      "weyl_search_cd",
      [](unsigned threads) {
        py::gil_scoped_release release;
        return weyl_search_cd(threads).weyl_order;
      },
      py::arg("threads") = 4);
  m.def(
      "weyl_search_n1",
      [](std::size_t p, std::size_t q, const std::string& field) {
        return weyl_search_n1(p, q, Field::parse(field)).weyl_order;
      },
      py::arg("p"), py::arg("q"), py::arg("field") = "Q(i)");

  m.def(
      "spin_triple",
      [](const std::vector<std::string>& vectors, const std::string& basis, const std::string& field) {
        const Cayley c(Field::parse(field), basis == "cd" ? CayleyBasis::CD : CayleyBasis::Standard);
        std::vector<Vec> xs;
        for (const auto& v : vectors) xs.push_back(c.parse(v));
        const SpinElement s = spin_element_from_vectors(c, xs);
        json j = to_json(s.triple);
        j["related"] = is_related_triple(c, s.triple);
        return to_py(j);
      },
      py::arg("vectors"), py::arg("basis") = "cd", py::arg("field") = "Q");

  m.def(
      "orbit_census",
      [](const std::string& field, const std::string& target, std::uint64_t seed) {
        const OrbitCensus oc = orbit_census(Field::parse(field), parse_orbit_target(target), seed);
        return py::make_tuple(oc.orbit_size, oc.target_size, oc.equal);
      },
      py::arg("field") = "Fp:3", py::arg("target") = "unit_sphere", py::arg("seed") = 0x5EED);

  m.def(
      "lie_otilde",
      [](std::size_t n, const std::string& field) {
        const LieBasis l = lie_otilde(QuadSpace::euclidean(Field::parse(field), n));
        return py::make_tuple(l.dim(), l.contains_identity);
      },
      py::arg("n"), py::arg("field") = "Q");

  m.def(
      "witness_with_det",
      [](std::size_t n, const std::string& r, const std::string& field) {
        const Field& f = Field::parse(field);
        const Matrix w = witness_with_det(QuadSpace::euclidean(f, n), f.parse_scalar(r));
        json j;
        j["field"] = field_of(w).name();
        j["det"] = det(w).str();
        j["matrix"] = to_json(w);
        return to_py(j);
      },
      py::arg("n"), py::arg("det"), py::arg("field") = "Q");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one command line; returns (exit code, stdout, stderr).");
}
