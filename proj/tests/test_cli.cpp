#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "xprod/serialize.hpp"

using namespace xprod;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("cli verify") {
  const Run ok = run({"verify", "--builtin", "x1", "--field", "Q"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("result: PASS") != std::string::npos);
  CHECK(ok.out.find("admissible_mu: {1, -1}") != std::string::npos);
  CHECK(run({"verify", "--builtin", "c0", "--field", "Fp:5"}).code == 0);

  // Doubling the form breaks A2 but keeps A1.
  json doc = to_json(build_c0(Field::rationals()));
  for (auto& row : doc["gram"])
    for (auto& e : row) e = (Field::rationals().parse_scalar(e.get<std::string>()) * 2).str();
  const Run bad = run({"verify", "--input", write_temp("xprod_c0_2b.json", doc.dump()), "--no-forms", "--json"});
  CHECK(bad.code == 1);
  const json rep = json::parse(bad.out);
  CHECK(rep["checks"][0]["pass"] == true);
  CHECK(rep["checks"][1]["pass"] == false);
  CHECK(rep["checks"][1]["witnesses"].size() == 1);
  CHECK(rep["result"] == "fail");
}

TEST_CASE("cli input errors") {
  const Run parse = run({"verify", "--input", write_temp("xprod_bad.json", "{\"arity\": 2,\n  \"dim\": }")});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("line 2") != std::string::npos);
  CHECK(run({"verify", "--builtin", "x9"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"grading", "weyl"}).code == 2);
  CHECK(run({"grading", "weyl", "--id", "g2-z2", "--oracle"}).code == 2);
  CHECK(run({"spin", "triple", "--vectors", "w1"}).code == 2);
  CHECK(run({"spin", "witness", "--n", "5", "--det", "-1"}).code == 2);
  CHECK(run({"verify", "--builtin", "x1", "--seed", "abc"}).code == 2);
  // The n-1 product over Q needs sqrt(-1) for an odd number of hyperbolic pairs.
  CHECK(run({"grading", "classify", "--builtin", "n1:1,1", "--field", "Q"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli grading") {
  const Run cartan = run({"grading", "classify", "--builtin", "cartan"});
  CHECK(cartan.code == 0);
  CHECK(cartan.out.find("family 1") != std::string::npos);
  const Run cd = run({"grading", "classify", "--builtin", "cd", "--json"});
  CHECK(json::parse(cd.out)["values"]["classification"]["family"] == 3);
  const Run iso = run({"grading", "isofine", "--builtin", "cartan", "--other-builtin", "cd"});
  CHECK(iso.code == 0);
  CHECK(iso.out.find("isomorphic: no") != std::string::npos);
  const Run list = run({"grading", "finelist", "--n", "4"});
  CHECK(list.out.find("U = Z x Z/4") != std::string::npos);
  CHECK(list.out.find("U = Z^2") != std::string::npos);
  const Run weyl = run({"grading", "weyl", "--id", "cd", "--oracle", "--threads", "4"});
  CHECK(weyl.code == 0);
  CHECK(weyl.out.find("search_weyl_order: 1344") != std::string::npos);
  const Run star = run({"grading", "classify", "--builtin", "n1:2,1"});
  CHECK(star.code == 0);
  CHECK(star.out.find("h: ") != std::string::npos);

  // A grading read back from its own JSON.
  const std::string path = write_temp("xprod_cd.json", to_json(cd_grading(Field::rationals())).dump());
  CHECK(run({"grading", "isofine", "--input", path, "--other-builtin", "cd"}).out.find("isomorphic: yes") !=
        std::string::npos);
}

TEST_CASE("cli spin") {
  CHECK(run({"spin", "triple", "--vectors", "w1,w1"}).out.find("triple: (Id, -Id, -Id)") != std::string::npos);
  CHECK(run({"spin", "orbits", "--field", "Fp:3", "--target", "unit_sphere"}).out.find("2160 = 2160") !=
        std::string::npos);
  const Run lie = run({"spin", "lie", "--n", "5", "--field", "Fp:3"});
  CHECK(lie.out.find("dim: 11") != std::string::npos);
  CHECK(lie.out.find("contains_identity: yes") != std::string::npos);
  const Run w = run({"spin", "witness", "--n", "4", "--det", "4", "--field", "Fp:5"});
  CHECK(w.code == 0);
}

TEST_CASE("cli output is reproducible") {
  const std::vector<std::string> args{"verify", "--builtin", "star:7", "--field", "Fp:5", "--threads", "3", "--no-forms"};
  const Run a = run(args), b = run(args);
  CHECK(a.out == b.out);
  CHECK(a.out.find("sampled") != std::string::npos);
  const Run other = run({"verify", "--builtin", "star:7", "--field", "Fp:5", "--seed", "7", "--no-forms"});
  CHECK(other.code == 0);
}
