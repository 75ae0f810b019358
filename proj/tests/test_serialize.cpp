#include "doctest.h"
#include "xprod/serialize.hpp"

using namespace xprod;

namespace {

const Field& Q() { return Field::rationals(); }

}  // namespace

TEST_CASE("scalars, vectors and matrices") {
  const Field& qi = Field::parse("Q(i)");
  const Scalar s = qi.element(mpq_class(1, 2), -3);
  CHECK(scalar_from_json(to_json(s), qi) == s);
  CHECK(scalar_from_json(json(7), Field::prime(5)) == Field::prime(5).from_int(2));
  const Matrix m = Matrix::from_ints(Q(), {{1, -2}, {0, 5}});
  CHECK(to_json(m).dump() == R"([["1","-2"],["0","5"]])");
  CHECK(matrix_from_json(to_json(m), Q()) == m);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"([["1"],["1","2"]])"), Q()), InputError);
  CHECK_THROWS_AS(scalar_from_json(json(true), Q()), InputError);
}

TEST_CASE("parse diagnostics carry line and column") {
  try {
    parse_json_text("{\n  \"arity\": 2,\n  \"dim\" 7\n}");
    FAIL("expected a parse error");
  } catch (const InputError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("column") != std::string::npos);
  }
}

TEST_CASE("cross product documents") {
  const CrossProduct c0 = build_c0(Q());
  const json j = to_json(c0);
  CHECK(j["kind"] == "tensor");
  CHECK(j["tensor"].size() == 7);
  CHECK(j["tensor"][0][0].size() == 7);
  const CrossProduct back = cross_product_from_json(j);
  CHECK(back.tensor_data() == c0.tensor_data());
  CHECK(back.form()->gram() == c0.form()->gram());
  CHECK(to_json(back) == j);

  const CrossProduct star = build_star(QuadSpace::euclidean(Field::prime(5), 4));
  const json js = to_json(star);
  CHECK(js["kind"] == "star");
  CHECK_FALSE(js.contains("tensor"));
  const CrossProduct sb = cross_product_from_json(js);
  CHECK(sb.field() == Field::prime(5));
  CHECK(sb.eval_basis({0, 1, 2}) == star.eval_basis({0, 1, 2}));

  CHECK_THROWS_AS(cross_product_from_json(json::parse(R"({"arity":2,"dim":3,"kind":"star"})")), InputError);
  CHECK_THROWS_AS(cross_product_from_json(json::parse(R"({"arity":1,"dim":2,"kind":"tensor","tensor":[["0"]]})")),
                  InputError);
  CHECK_THROWS_AS(cross_product_from_json(json::parse(R"({"dim":2})")), InputError);
}

TEST_CASE("presentations") {
  const json j = json::parse(R"({"generators":["x1","y1","z1"],"relations":[["x1","x1","-y1","-z1"]]})");
  const AbGroup g = presentation_from_json(j);
  CHECK(g.type_str() == AbGroup::from_type(2, {}).type_str());
  CHECK(presentation_to_json(g) == j);
  const GroupElem x = element_from_json(json::parse("[2,0,0]"), g);
  CHECK(x == element_from_json(json::parse("[0,1,1]"), g));
  CHECK(element_from_json(to_json(x), g) == x);
  CHECK_THROWS_AS(presentation_from_json(json::parse(R"({"generators":["a"],"relations":[["b"]]})")), InputError);
  CHECK_THROWS_AS(element_from_json(json::parse("[1]"), g), InputError);
}

TEST_CASE("grading documents round-trip") {
  const Field& qi = Field::parse("Q(i)");
  const AbGroup z = AbGroup::free(1);
  const DeltaMap plane(z, {{z.generator(0), 1}, {z.generator(0).inverse(), 1}});
  const Grading cases[] = {cartan_grading(Q()), cd_grading(Q()), fine_n1(2, 1, 4, qi).grading,
                           build_gamma_delta(plane, qi)};
  for (const auto& g : cases) {
    const json j = to_json(g);
    const Grading back = grading_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(verify_grading(back).pass);
    CHECK(back.group().isomorphic(g.group()));
  }
  json bad = to_json(cartan_grading(Q()));
  bad["assignments"][0]["vector"] = bad["assignments"][1]["vector"];
  CHECK_THROWS_AS(grading_from_json(bad), InputError);
  bad = to_json(cartan_grading(Q()));
  bad["structure"] = "lie";
  CHECK_THROWS_AS(grading_from_json(bad), InputError);
}

TEST_CASE("classification and triples") {
  const json c = to_json(classify_83(cd_grading(Q())));
  CHECK(c["family"] == 3);
  CHECK(c["H"].size() == 16);
  CHECK(c["K"].size() == 8);
  const Matrix id = Matrix::identity(Q(), 8);
  const json t = to_json(TriIsometry{id, -id, -id});
  CHECK(t["f1"][0][0] == "-1");
}
