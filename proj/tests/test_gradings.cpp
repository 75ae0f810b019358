#include <algorithm>
#include <random>

#include "doctest.h"
#include "xprod/gradings.hpp"

using namespace xprod;

namespace {

const Field& Q() { return Field::rationals(); }
// Hyperbolic pairs with b(v, w) = 1 need sqrt(-1) for the volume element.
const Field& Qi() { return Field::parse("Q(i)"); }

std::vector<GroupElem> sorted(std::vector<GroupElem> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Support of a grading minus a subgroup, as a set difference.
std::vector<GroupElem> minus(const std::vector<GroupElem>& a, const std::vector<GroupElem>& b) {
  std::vector<GroupElem> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

TEST_CASE("Cartan and CD gradings") {
  const Grading cartan = cartan_grading(Q());
  CHECK(verify_grading(cartan).pass);
  CHECK(verify_grading(cartan).checked == 512);
  CHECK(cartan.degrees()[1] == cartan.group().element(std::vector<long>{1, 1, 1}));
  CHECK(is_fine(cartan));

  const Grading cd = cd_grading(Q());
  CHECK(verify_grading(cd).pass);
  CHECK(is_fine(cd));
  const AbGroup& g = cd.group();
  CHECK(cd.degrees()[0] == g.element(std::vector<long>{1, 0, 0, 0}));
  CHECK(cd.degrees()[1] == g.element(std::vector<long>{1, 1, 0, 0}));
  CHECK(cd.degrees()[3] == g.element(std::vector<long>{1, 0, 0, 1}));

  // deg(u1) := e breaks closure.
  auto degrees = cartan.degrees();
  degrees[2] = cartan.group().identity();
  const auto bad = verify_grading(cartan.with_degrees(cartan.group(), degrees));
  CHECK_FALSE(bad.pass);
  REQUIRE_FALSE(bad.witnesses.empty());
  CHECK(bad.witnesses.front().find("expected") != std::string::npos);

  // The same assignments on the type-I 3-fold product.
  const Grading x1(GradedStructure::X1, build_three_fold(1, Q().one(), Q()), std::nullopt, cartan.group(),
                   cartan.basis(), cartan.degrees());
  CHECK(verify_grading(x1).pass);
}

TEST_CASE("form compatibility") {
  const Grading cartan = cartan_grading(Q());
  const auto fc = form_compatibility(cartan, *cartan.form());
  CHECK(fc.compatible);
  CHECK(fc.h.is_identity());

  const FineN1 f40 = fine_n1(4, 0, 4, Q());
  const auto c40 = form_compatibility(f40.grading, *f40.grading.form());
  CHECK_FALSE(c40.compatible);
  // Oracle: x1 x2 x3 x4 from exponent vectors.
  CHECK(c40.h == f40.universal.element(std::vector<long>{1, 1, 1, 1}));
  CHECK(component_dichotomy_holds(f40.grading, *f40.grading.form(), c40.h));

  // Trivial grading: h = e.
  const AbGroup one;
  const Grading trivial = cartan_coarsening(one, {one.identity(), one.identity(), one.identity()}, Q());
  CHECK(form_compatibility(trivial, *trivial.form()).compatible);

  // A pairing that does not factor: the form b = I on a grading by hyperbolic degrees.
  const FineN1 f02 = fine_n1(0, 2, 4, Q());
  CHECK_THROWS_AS(form_compatibility(f02.grading, QuadSpace::euclidean(Q(), 4)), Error);
}

TEST_CASE("delta maps and Gamma(G, delta)") {
  // n = 5 over Z/3 x Z: h = (1|0), g1 = (2|0) with g1^2 = h, g2 = (0|1).
  const AbGroup g = AbGroup::from_type(1, {3});
  const GroupElem h = g.from_coords({1, 0}), g1 = g.from_coords({2, 0}), g2 = g.from_coords({0, 1});
  const GroupElem g3 = g2.inverse() * h;
  const DeltaMap delta(g, {{g1, 1}, {g2, 2}, {g3, 2}});
  CHECK(delta.h() == h);
  CHECK(delta.total() == 5);
  CHECK_NOTHROW(delta.validate());
  const Grading gamma = build_gamma_delta(delta, Q());
  CHECK(verify_grading(gamma).pass);
  CHECK(delta_of(gamma) == delta);
  const auto fc = form_compatibility(gamma, *gamma.form());
  CHECK(fc.h == h);
  CHECK_FALSE(fc.compatible);
  CHECK(component_dichotomy_holds(gamma, *gamma.form(), h));
  CHECK(gamma.component_dim(g2) == 2);

  // delta(e) = n: the trivial grading.
  const AbGroup z = AbGroup::free(1);
  const Grading triv = build_gamma_delta(DeltaMap(z, {{z.identity(), 3}}), Q());
  CHECK(verify_grading(triv).pass);
  CHECK(triv.support().size() == 1);
  // Hyperbolic plane, n = 2.
  const Grading plane = build_gamma_delta(DeltaMap(z, {{z.generator(0), 1}, {z.generator(0).inverse(), 1}}), Qi());
  CHECK(verify_grading(plane).pass);
  CHECK(form_compatibility(plane, *plane.form()).compatible);

  CHECK_THROWS_AS(DeltaMap(g, {{g1, 1}, {g2, 2}, {g3, 1}}).validate(), InputError);

  CHECK(n1_isomorphic(delta, delta));
  CHECK_FALSE(n1_isomorphic(delta, DeltaMap(g, {{g1, 2}, {g2, 1}, {g3, 2}})));
  CHECK(n1_isomorphic(delta, DeltaMap(g, {{g1, 1}, {g2, 2}, {g3, 2}, {g.identity(), 0}})));
}

TEST_CASE("fine gradings of (n-1)-fold products") {
  const std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::string>> n4 = {
      {{0, 2}, "Z^2"}, {{2, 1}, "Z x Z/4"}, {{4, 0}, "Z/2 x Z/2 x Z/4"}};
  for (const auto& [pq, type] : n4) {
    const FineN1 f = fine_n1(pq.first, pq.second, 4, Qi());
    CHECK(f.universal.type_str() == type);
    CHECK(is_fine(f.grading));
    CHECK(verify_grading(f.grading).pass);
    const auto fc = form_compatibility(f.grading, *f.grading.form());
    CHECK(component_dichotomy_holds(f.grading, *f.grading.form(), fc.h));
  }
  CHECK(fine_n1(1, 1, 3, Qi()).universal.type_str() == "Z");
  CHECK(fine_n1(3, 0, 3, Q()).universal.type_str() == "Z/2 x Z/2");
  CHECK(verify_grading(fine_n1(1, 2, 5, Field::prime(5)).grading).pass);
  CHECK_THROWS_AS(fine_n1(1, 1, 4, Q()), InputError);
  const AbGroup z = AbGroup::free(1);
  CHECK_FALSE(is_fine(build_gamma_delta(DeltaMap(z, {{z.identity(), 3}}), Q())));
}

TEST_CASE("Gamma(G,H), shifts and Gamma(G,H,K)") {
  const AbGroup g = AbGroup::elementary2(5);
  auto e = [&](std::size_t i) { return g.generator(i); };
  const Grading gh = gamma_GH(g, {e(0), e(1), e(2)}, Q());
  CHECK(verify_grading(gh).pass);
  CHECK(gh.degrees()[4] == e(0) * e(1));
  CHECK(gh.support() == generated_subgroup(g, {e(0), e(1), e(2)}));

  const Grading sh = shift(gh, e(4));
  CHECK(verify_grading(sh).pass);
  CHECK(shift(sh, e(4)).degrees() == gh.degrees());
  CHECK_THROWS_AS(shift(cartan_grading(Q()), cartan_grading(Q()).degrees()[1]), InputError);

  const Grading ghk = gamma_GHK(g, {e(0), e(1), e(2), e(3)}, {e(1), e(2), e(3)}, e(0), Q());
  CHECK(verify_grading(ghk).pass);
  const auto hs = generated_subgroup(g, {e(0), e(1), e(2), e(3)}), ks = generated_subgroup(g, {e(1), e(2), e(3)});
  CHECK(ghk.support() == minus(hs, ks));

  CHECK_THROWS_AS(gamma_GH(g, {e(0), e(1), e(0) * e(1)}, Q()), InputError);
  CHECK_THROWS_AS(gamma_GHK(g, {e(0), e(1), e(2), e(3)}, {e(1), e(2), e(3)}, e(1), Q()), InputError);
  CHECK_THROWS_AS(gamma_GHK(g, {e(0), e(1), e(2), e(3)}, {e(1), e(2), e(4)}, e(0), Q()), InputError);
}

TEST_CASE("classification of gradings on the 3C triple") {
  const Grading cartan = cartan_grading(Q());
  const auto cc = classify_83(cartan);
  CHECK(cc.family == 1);
  REQUIRE(cc.alpha.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(cc.alpha[i] == cartan.group().generator(i));

  const Grading cd_gr = cd_grading(Q());
  const auto cd = classify_83(cd_gr);
  CHECK(cd.family == 3);
  const AbGroup& g4 = cd_gr.group();
  CHECK(cd.h_sub == g4.elements());
  std::vector<GroupElem> k;
  for (const auto& x : g4.elements())
    if (sgn(g4.exponents(x)[0]) == 0) k.push_back(x);
  CHECK(cd.k_sub == sorted(k));

  const AbGroup one;
  const auto triv = classify_83(cartan_coarsening(one, {one.identity(), one.identity(), one.identity()}, Q()));
  CHECK(triv.family == 1);
  CHECK(triv.alpha[0].is_identity());

  // Coarsenings by a hom into Z/4 x Z keep closure and transform degrees.
  const AbGroup g = AbGroup::from_type(1, {4});
  const std::vector<GroupElem> images{g.from_coords({1, 0}), g.from_coords({0, 1}), g.from_coords({3, 2})};
  const Grading coarse = cartan_coarsening(g, images, Q());
  CHECK(verify_grading(coarse).pass);
  CHECK(coarse.degrees()[1] == images[0] * images[1] * images[2]);
  const auto cl = classify_83(coarse);
  CHECK(cl.family == 1);
  CHECK(iso_83(cl, Classification83{1, images, {}, {}}));
  // alpha and alpha o (-Id) are isomorphic.
  CHECK(iso_83(cl, Classification83{1, {images[0].inverse(), images[1].inverse(), images[2].inverse()}, {}, {}}));
  CHECK(iso_83(coarse, coarse));
  // alpha with a different image multiset is not.
  CHECK_FALSE(iso_83(cl, Classification83{1, {images[0], images[0], images[2]}, {}, {}}));

  const AbGroup g5 = AbGroup::elementary2(5);
  auto e = [&](std::size_t i) { return g5.generator(i); };
  CHECK_FALSE(iso_83(gamma_GH(g5, {e(0), e(1), e(2)}, Q()), gamma_GH(g5, {e(0), e(1), e(3)}, Q())));
  CHECK(iso_83(gamma_GH(g5, {e(0), e(1), e(2)}, Q()), gamma_GH(g5, {e(0) * e(1), e(1), e(2)}, Q())));
}

TEST_CASE("classification round-trips over (Z/2)^5") {
  const AbGroup g = AbGroup::elementary2(5);
  std::mt19937_64 rng(83);
  auto random_elem = [&] {
    std::vector<long> x(5);
    for (auto& c : x) c = static_cast<long>(rng() % 2);
    return g.element(x);
  };
  // Independent elements extending `base` until it has rank r.
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
    CHECK(c2.family == 2);
    CHECK(c2.h_sub == generated_subgroup(g, hgens));

    const auto kgens = extend({}, 3);
    auto hk = extend(kgens, 4);
    const GroupElem h = hk.back();
    std::shuffle(hk.begin(), hk.end(), rng);
    const auto c3 = classify_83(gamma_GHK(g, hk, kgens, h, Q()));
    CHECK(c3.family == 3);
    CHECK(c3.h_sub == generated_subgroup(g, hk));
    CHECK(c3.k_sub == generated_subgroup(g, kgens));
  }
}

TEST_CASE("Weyl groups") {
  CHECK(weyl_order(parse_fine_grading_id("n1:4,0")) == 24);
  CHECK(weyl_order(parse_fine_grading_id("n1:1,1")) == 2);
  CHECK(weyl_order(parse_fine_grading_id("n1:2,3")) == 2 * 8 * 6);
  CHECK(weyl_order(parse_fine_grading_id("cartan")) == 48);
  CHECK(weyl_order(parse_fine_grading_id("cd")) == 1344);
  CHECK(weyl_order(parse_fine_grading_id("g2-cartan")) == 12);
  CHECK(weyl_order(parse_fine_grading_id("g2-z2")) == 168);
  CHECK(weyl_order(parse_fine_grading_id("onefold:3")) == 36);
  CHECK_THROWS_AS(parse_fine_grading_id("e8"), InputError);
  CHECK(to_string(parse_fine_grading_id("n1:2,1")) == "n1:2,1");

  CHECK(weyl_search_n1(1, 1, Qi()).weyl_order == 2);
  CHECK(weyl_search_n1(3, 0, Q()).weyl_order == 6);
  CHECK(weyl_search_n1(4, 0, Field::prime(5)).weyl_order == 24);
  CHECK(weyl_search_n1(2, 1, Qi()).weyl_order == 4);
  CHECK_THROWS_AS(weyl_search_n1(2, 1, Q()), RequiresClosedField);

  const WeylSearch cd = weyl_search_cd(4);
  CHECK(cd.weyl_order == 1344);
  CHECK(cd.self_equivalences == 1344 * 16);
}
