#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include "oddsoergel/calculus.hpp"

using namespace osb;
using namespace osb::objs;

namespace {

SkewPoly x(int i) { return SkewPoly::var(2, i); }
SkewPoly one() { return SkewPoly::constant(2, 1); }

const std::vector<Obj>& bfac() {
  static const std::vector<Obj> f = {Ind(), Res()};
  return f;
}
const std::vector<Obj>& bbfac() {
  static const std::vector<Obj> f = {Ind(), Res(), Ind(), Res()};
  return f;
}

}  // namespace

TEST_CASE("degrees of the generating maps") {
  std::map<std::string, int> expect = {
      {"m", 1},          {"delta", 1},     {"psi_ur", 0},      {"psi_ru", 0},     {"psi_down_ur", 0},
      {"psi_down_ru", 0}, {"merge", -1},   {"split", -1},      {"cupU", 0},       {"capU", 0},
      {"cupUs", 0},      {"capUs", 0},     {"alpha0", 0},      {"beta0", 0},      {"alpha2", 0},
      {"beta2", 0},      {"alpha3", 0},    {"beta3", 0},       {"e_first", 0},    {"e_second", 0},
      {"extra_deg2", 2}, {"mixed_cup_res", 0}, {"mixed_cap_res", 0}, {"mixed_cup_ind", 0},
      {"mixed_cap_ind", 0}};
  for (const auto& [name, d] : expect) {
    CAPTURE(name);
    CHECK(named(name).degree == d);
  }
}

TEST_CASE("every catalog map is a bimodule map") {
  for (const auto& name : named_ids()) {
    CAPTURE(name);
    CHECK(verify_morphism(named(name)).ok);
  }
  CHECK_THROWS_AS(named("alpha7"), std::invalid_argument);
}

TEST_CASE("dot and vertex on elements") {
  CHECK(named("m").apply(pure(bfac(), {one(), x(2)})) == Elem{x(2)});
  Elem d = named("delta").apply(Elem{one()});
  CHECK(d == elem_add(pure(bfac(), {one(), x(2)}), elem_scale(SkewPoly::constant(2, -1), pure(bfac(), {x(2), one()}))));
  CHECK(d == elem_add(pure(bfac(), {one(), x(1)}), elem_scale(SkewPoly::constant(2, -1), pure(bfac(), {x(1), one()}))));
  Elem v = pure(bbfac(), {one(), x(1), one(), one()});
  CHECK(named("merge").apply(v) == pure({U(), Ind(), Res()}, {one(), one(), one()}));
}

TEST_CASE("idempotent decomposition of B B") {
  auto [e1, e2] = idempotents_BB();
  Obj bb = tensor(B(), B());
  Elem v = pure(bbfac(), {one(), x(1), one(), one()});
  CHECK((e1 + e2).apply(v) == v);
  CHECK(same_map(compose(e1, e1), e1));
  CHECK(same_map(compose(e2, e2), e2));
  CHECK(compose(e2, e1).is_zero());
  CHECK(compose(e1, e2).is_zero());
  CHECK(same_map(e1 + e2, identity(bb)));
  CHECK_FALSE(e1.is_zero());
  CHECK_FALSE(e2.is_zero());
}

TEST_CASE("sign-flipped second idempotent is rejected") {
  auto [e1, e2] = idempotents_BB();
  Morphism flipped = Q(-1) * e2;
  CHECK_FALSE(same_map(compose(flipped, flipped), flipped));
  CHECK_FALSE(same_map(e1 + flipped, identity(tensor(B(), B()))));
  RelationReport r = compare("flipped", "e", compose(flipped, flipped), "e", flipped);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.witness.empty());
}

TEST_CASE("summands of B B") {
  auto [e1, e2] = idempotents_BB();
  Splitting s1 = split_idempotent(e1, "S1"), s2 = split_idempotent(e2, "S2");
  CHECK(find_isomorphism(s1.summand, shift(B(), -1)));
  CHECK(find_isomorphism(s2.summand, shift(Bbar(), 1)));
  CHECK_FALSE(find_isomorphism(s1.summand, shift(Bbar(), 1)));
  for (const auto* s : {&s1, &s2}) CHECK(same_map(compose(s->incl, s->proj), identity(s->summand)));
  CHECK(s1.summand->rank() + s2.summand->rank() == tensor(B(), B())->rank());
  for (int d = -4; d <= 10; ++d)
    CHECK(hom_dim(R(), s1.summand, d) + hom_dim(R(), s2.summand, d) == hom_dim(R(), tensor(B(), B()), d));
}

TEST_CASE("non-unique splitting map from Bbar to B") {
  Morphism f = named("extra_deg2");
  CHECK(f.degree == 2);
  CHECK_FALSE(f.is_zero());
  CHECK(hom_dim(Bbar(), B(), 2) >= 1);
}

TEST_CASE("relation suite passes and serializes") {
  auto reps = relation_suite();
  CHECK(reps.size() >= 60);
  for (const auto& r : reps) {
    CAPTURE(r.name);
    CHECK(r.pass);
  }
  auto j = nlohmann::json::parse(relation_suite_json(reps));
  REQUIRE(j.is_array());
  CHECK(j.size() == reps.size());
  for (const auto& e : j) CHECK(e["status"] == "pass");
  auto again = relation_suite(2);
  REQUIRE(again.size() == reps.size());
  for (size_t i = 0; i < reps.size(); ++i) CHECK(again[i].name == reps[i].name);
}

TEST_CASE("a fake morphism fails the relation check") {
  Morphism fake = from_images(B(), R(), 1, {{one()}, {x(2)}});
  CHECK_FALSE(verify_morphism(fake).ok);
  CHECK_FALSE(compare("fake dot", "fake", fake, "m", named("m")).pass);
}
