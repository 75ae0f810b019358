#include "xprod/serialize.hpp"

#include <algorithm>
#include <functional>

namespace xprod {

namespace {

// Schema lookups raise nlohmann exceptions; surface them as input errors.
template <class F>
auto guarded(const char* what, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

const Field& field_of_doc(const json& j, const Field& fallback) {
  if (j.contains("field")) return Field::parse(j.at("field").get<std::string>());
  return fallback;
}

std::string basis_tag(CayleyBasis b) { return b == CayleyBasis::CD ? "cd" : "std"; }

CayleyBasis parse_basis_tag(const std::string& s) {
  if (s == "std") return CayleyBasis::Standard;
  if (s == "cd") return CayleyBasis::CD;
  throw InputError("unknown basis tag '" + s + "' (expected std or cd)");
}

}  // namespace

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    // Drop the library prefix "[json.exception.parse_error.101] parse error at ...: ".
    if (auto p = msg.find(": "); p != std::string::npos) msg = msg.substr(p + 2);
    throw InputError("JSON parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     msg);
  }
}

json to_json(const Scalar& s) { return s.str(); }

json to_json(const Vec& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(s.str());
  return a;
}

json to_json(const Matrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Scalar scalar_from_json(const json& j, const Field& f) {
  if (j.is_string()) return f.parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return f.from_int(j.get<long>());
  throw InputError("scalar must be a string or an integer, got " + j.dump());
}

Vec vec_from_json(const json& j, const Field& f) {
  if (!j.is_array()) throw InputError("vector must be an array");
  Vec v;
  for (const auto& x : j) v.push_back(scalar_from_json(x, f));
  return v;
}

Matrix matrix_from_json(const json& j, const Field& f) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a non-empty array of rows");
  std::vector<Vec> rows;
  for (const auto& r : j) rows.push_back(vec_from_json(r, f));
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw InputError("matrix rows have different lengths");
  return Matrix::from_rows(rows);
}

json to_json(const CrossProduct& x) {
  json j;
  j["field"] = x.field().name();
  j["arity"] = x.arity();
  j["dim"] = x.dim();
  j["kind"] = x.kind() == CrossKind::Star ? "star" : "tensor";
  if (x.kind() == CrossKind::Tensor) {
    const auto& data = x.tensor_data();
    const std::size_t n = x.dim();
    std::function<json(std::size_t, std::size_t)> nest = [&](std::size_t depth, std::size_t offset) {
      json a = json::array();
      if (depth == x.arity()) {
        for (std::size_t k = 0; k < n; ++k) a.push_back(data[offset * n + k].str());
        return a;
      }
      for (std::size_t i = 0; i < n; ++i) a.push_back(nest(depth + 1, offset * n + i));
      return a;
    };
    j["tensor"] = nest(0, 0);
  }
  if (x.form()) j["gram"] = to_json(x.form()->gram());
  return j;
}

CrossProduct cross_product_from_json(const json& j, const Field& fallback) {
  return guarded("cross product", [&] {
    const Field& f = field_of_doc(j, fallback);
    const auto r = j.at("arity").get<std::size_t>();
    const auto n = j.at("dim").get<std::size_t>();
    const auto kind = j.at("kind").get<std::string>();
    std::optional<QuadSpace> b;
    if (j.contains("gram")) {
      b = QuadSpace(matrix_from_json(j.at("gram"), f));
      if (b->dim() != n) throw InputError("gram matrix does not match dim");
    }
    if (kind == "star") {
      if (!b) throw InputError("star product needs a gram matrix");
      if (r + 1 != n) throw InputError("star product has arity dim-1");
      return build_star(*b);
    }
    if (kind != "tensor") throw InputError("kind must be tensor or star, got '" + kind + "'");
    if (!j.contains("tensor")) throw InputError("tensor product needs a tensor");
    std::vector<Scalar> data;
    std::function<void(const json&, std::size_t)> walk = [&](const json& a, std::size_t depth) {
      if (!a.is_array() || a.size() != n)
        throw InputError("tensor level " + std::to_string(depth) + " must have " + std::to_string(n) + " entries");
      if (depth == r) {
        for (const auto& s : a) data.push_back(scalar_from_json(s, f));
        return;
      }
      for (const auto& s : a) walk(s, depth + 1);
    };
    walk(j.at("tensor"), 0);
    return CrossProduct::tensor(r, n, f, std::move(data), b);
  });
}

json presentation_to_json(const AbGroup& g) {
  json j;
  j["generators"] = g.generator_names();
  json rels = json::array();
  for (const auto& row : g.relations()) {
    json rel = json::array();
    for (std::size_t k = 0; k < row.size(); ++k) {
      const mpz_class& c = row[k];
      const std::string name = (sgn(c) < 0 ? "-" : "") + g.generator_names()[k];
      for (mpz_class t = abs(c); t > 0; --t) rel.push_back(name);
    }
    rels.push_back(rel);
  }
  j["relations"] = rels;
  return j;
}

AbGroup presentation_from_json(const json& j) {
  return guarded("presentation", [&] {
    const auto names = j.at("generators").get<std::vector<std::string>>();
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].empty() || names[i][0] == '-') throw InputError("invalid generator name '" + names[i] + "'");
      if (std::find(names.begin(), names.begin() + static_cast<long>(i), names[i]) != names.begin() + static_cast<long>(i))
        throw InputError("duplicate generator '" + names[i] + "'");
    }
    IntMatrix rels;
    if (j.contains("relations")) {
      for (const auto& rel : j.at("relations")) {
        IntVec row(names.size(), 0);
        for (const auto& tok : rel.get<std::vector<std::string>>()) {
          const bool neg = !tok.empty() && tok[0] == '-';
          const std::string name = neg ? tok.substr(1) : tok;
          const auto it = std::find(names.begin(), names.end(), name);
          if (it == names.end()) throw InputError("relation uses unknown generator '" + name + "'");
          row[static_cast<std::size_t>(it - names.begin())] += neg ? -1 : 1;
        }
        rels.push_back(row);
      }
    }
    return AbGroup::from_presentation(names.size(), rels, names);
  });
}

json to_json(const GroupElem& g) {
  json a = json::array();
  for (const auto& e : g.group().exponents(g)) a.push_back(e.get_si());
  return a;
}

GroupElem element_from_json(const json& j, const AbGroup& g) {
  return guarded("group element", [&] {
    const auto exps = j.get<std::vector<long>>();
    if (exps.size() != g.generator_count())
      throw InputError("degree needs " + std::to_string(g.generator_count()) + " exponents");
    return g.element(exps);
  });
}

json to_json(const Grading& g) {
  json j;
  j["structure"] = to_string(g.structure());
  j["field"] = g.field().name();
  j["basis"] = basis_tag(g.cayley_basis());
  j["group"] = presentation_to_json(g.group());
  if (g.structure() == GradedStructure::Star || g.structure() == GradedStructure::OneFold) {
    j["product"] = to_json(g.product());
    if (g.form()) j["gram"] = to_json(g.form()->gram());
  }
  json as = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i) {
    json a;
    a["vector"] = to_json(g.basis()[i]);
    a["degree"] = to_json(g.degrees()[i]);
    as.push_back(a);
  }
  j["assignments"] = as;
  return j;
}

Grading grading_from_json(const json& j, const Field& fallback) {
  return guarded("grading", [&] {
    const Field& f = field_of_doc(j, fallback);
    const GradedStructure s = parse_graded_structure(j.at("structure").get<std::string>());
    const CayleyBasis cb = parse_basis_tag(j.value("basis", std::string("std")));
    const AbGroup group = presentation_from_json(j.at("group"));
    std::optional<CrossProduct> x;
    std::optional<QuadSpace> form;
    switch (s) {
      case GradedStructure::C0X:
        x = build_c0(f, cb);
        form = x->form();
        break;
      case GradedStructure::X1:
        x = build_three_fold(1, f.one(), f, cb);
        form = x->form();
        break;
      case GradedStructure::TripleC:
        x = build_triple_3c(f, cb);
        form = Cayley(f, cb).bn_space();
        break;
      case GradedStructure::Star:
      case GradedStructure::OneFold: {
        if (j.contains("gram")) form = QuadSpace(matrix_from_json(j.at("gram"), f));
        if (j.contains("product")) {
          x = cross_product_from_json(j.at("product"), f);
        } else if (s == GradedStructure::Star) {
          if (!form) throw InputError("star grading needs a gram matrix or a product");
          x = build_star(*form);
        } else {
          if (!j.contains("J")) throw InputError("onefold grading needs J or a product");
          OneFold o = build_one_fold(matrix_from_json(j.at("J"), f), form);
          if (!form) form = o.form;
          x = o.product;
        }
        if (!form) form = x->form();
        break;
      }
    }
    std::vector<Vec> basis;
    std::vector<GroupElem> degrees;
    for (const auto& a : j.at("assignments")) {
      basis.push_back(vec_from_json(a.at("vector"), f));
      degrees.push_back(element_from_json(a.at("degree"), group));
    }
    return Grading(s, *x, form, group, basis, degrees, cb);
  });
}

json to_json(const Classification83& c) {
  json j;
  j["family"] = c.family;
  auto list = [](const std::vector<GroupElem>& v) {
    json a = json::array();
    for (const auto& g : v) a.push_back(to_json(g));
    return a;
  };
  if (c.family == 1) j["alpha"] = list(c.alpha);
  if (c.family >= 2) j["H"] = list(c.h_sub);
  if (c.family == 3) j["K"] = list(c.k_sub);
  j["summary"] = c.str();
  return j;
}

json to_json(const TriIsometry& t) {
  json j;
  j["f0"] = to_json(t.f0);
  j["f1"] = to_json(t.f1);
  j["f2"] = to_json(t.f2);
  return j;
}

}  // namespace xprod
