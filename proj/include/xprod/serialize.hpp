#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "xprod/autgrp.hpp"
#include "xprod/gradings.hpp"

namespace xprod {

using json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become InputError with line and column.
json parse_json_text(std::string_view text);

json to_json(const Scalar& s);
json to_json(const Vec& v);
json to_json(const Matrix& m);
Scalar scalar_from_json(const json& j, const Field& f);
Vec vec_from_json(const json& j, const Field& f);
Matrix matrix_from_json(const json& j, const Field& f);

/// {"field", "arity", "dim", "kind": "tensor"|"star", "tensor"?, "gram"?}.
/// The tensor is nested r deep by argument index, each leaf the n coordinates of X(e_i1..e_ir).
json to_json(const CrossProduct& x);
/// `fallback` supplies the field when the document has none.
CrossProduct cross_product_from_json(const json& j, const Field& fallback = Field::rationals());

/// {"generators": [...], "relations": [["x1","x1","-y1"], ...]}: each relation is a signed
/// multiset of generators whose sum vanishes.
json presentation_to_json(const AbGroup& g);
AbGroup presentation_from_json(const json& j);
/// Elements are exponent vectors on the presentation generators.
json to_json(const GroupElem& g);
GroupElem element_from_json(const json& j, const AbGroup& g);

/// {"structure", "field", "basis": "std"|"cd", "group", "assignments": [{"vector", "degree"}],
///  "gram"? (star, onefold), "J"? (onefold)}.
json to_json(const Grading& g);
Grading grading_from_json(const json& j, const Field& fallback = Field::rationals());

json to_json(const Classification83& c);
json to_json(const TriIsometry& t);

}  // namespace xprod
