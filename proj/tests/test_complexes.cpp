#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include "oddsoergel/calculus.hpp"
#include "oddsoergel/complexes.hpp"

using namespace osb;

namespace {

int graded_rank(const Obj& m, int d) { return int(std::count(m->degs.begin(), m->degs.end(), d)); }

// Degree-wise ranks of the generators must add up across a decomposition.
void check_rank_additivity(const Obj& m, const std::vector<Piece>& ps) {
  for (int d = -8; d <= 8; ++d) {
    int sum = 0;
    for (const auto& p : ps) sum += graded_rank(p.summand.obj, d);
    CHECK(sum == graded_rank(m, d));
  }
}

}  // namespace

TEST_CASE("the two basic complexes") {
  Complex r = rouquier(), ri = rouquier_inv();
  CHECK(check_complex(r).ok);
  CHECK(check_complex(ri).ok);
  CHECK(shape_str(shape_of(r)) == "(0, B, 0), (1, R, -1)");
  CHECK(shape_str(shape_of(ri)) == "(-1, R, 1), (0, Bbar, 0)");
  CHECK(r.d[0][0][0].mat == named("m").mat);
  CHECK(ri.d[0][0][0].mat == named("delta_bar").mat);
}

TEST_CASE("tensor product of the basic complexes") {
  Complex c = tensor_complexes(rouquier(), rouquier_inv());
  CHECK(check_complex(c).ok);
  CHECK(shape_str(shape_of(c)) == "(-1, B*R, 1), (0, B*Bbar, 0), (0, R*R, 0), (1, R*Bbar, -1)");
  Morphism d2 = c.d[1][1][0];  // R{-1} R{1} -> R{-1} Bbar
  Morphism d3 = c.d[1][0][0];  // B Bbar -> R{-1} Bbar
  CHECK(d2.mat == (Q(-1) * named("delta_bar")).mat);
  CHECK(d3.mat == named("d3").mat);
  CHECK(c.d[0][0][0].mat == named("d1").mat);
  Complex triple = tensor_complexes(c, rouquier());
  CHECK(check_complex(triple).ok);
  Complex other = tensor_complexes(rouquier(), tensor_complexes(rouquier_inv(), rouquier()));
  CHECK(check_complex(other).ok);
  CHECK(triple.total_summands() == other.total_summands());
}

TEST_CASE("tensoring with the unit complex") {
  Complex unit = one_term(standard_summand("R", 0));
  for (const auto& c : {rouquier(), rouquier_inv()}) {
    Complex l = normalize(tensor_complexes(unit, c)), r = normalize(tensor_complexes(c, unit));
    CHECK(shape_str(shape_of(l)) == shape_str(shape_of(c)));
    CHECK(shape_str(shape_of(r)) == shape_str(shape_of(c)));
    CHECK(check_complex(l).ok);
    CHECK(check_complex(r).ok);
  }
}

TEST_CASE("decomposition of products of indecomposables") {
  std::map<std::string, std::string> expect = {
      {"B*B", "Bbar{1} B{-1}"}, {"B*Bbar", "Bbar{-1} B{1}"}, {"Bbar*B", "Bbar{-1} B{1}"},
      {"Bbar*Bbar", "Bbar{1} B{-1}"}, {"U*U", "R{0}"}, {"U*B", "Bbar{0}"}, {"B*U", "Bbar{0}"}};
  for (const auto& [word, want] : expect) {
    CAPTURE(word);
    auto sep = word.find('*');
    Obj m = tensor(standard_object(word.substr(0, sep), 0), standard_object(word.substr(sep + 1), 0));
    auto ps = decompose(m);
    std::vector<std::string> names;
    for (const auto& p : ps) {
      names.push_back(p.summand.obj->name);
      CHECK(same_map(compose(p.incl, p.proj), identity(p.summand.obj)));
      CHECK(verify_morphism(p.incl).ok);
      CHECK(verify_morphism(p.proj).ok);
    }
    std::sort(names.begin(), names.end());
    std::string got;
    for (const auto& n : names) got += (got.empty() ? "" : " ") + n;
    CHECK(got == want);
    check_rank_additivity(m, ps);
    Morphism sum(m, m, 0);
    for (const auto& p : ps) sum = sum + compose(p.proj, p.incl);
    CHECK(same_map(sum, identity(m)));
  }
}

TEST_CASE("the basic complexes are mutually inverse") {
  for (bool flip : {false, true}) {
    Complex c = flip ? tensor_complexes(rouquier_inv(), rouquier()) : tensor_complexes(rouquier(), rouquier_inv());
    ReductionTrace t;
    Complex r = reduce(c, &t);
    CHECK(shape_str(shape_of(r)) == "(0, R, 0)");
    CHECK(t.d2_every_step);
    CHECK(t.steps.size() == 2);
  }
}

TEST_CASE("elimination rejects a non-invertible entry") {
  Complex r = rouquier();
  CHECK_THROWS_AS(gaussian_eliminate(r, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_eliminate(r, 3, 0, 0), std::invalid_argument);
  Complex c = normalize(tensor_complexes(rouquier(), rouquier_inv()));
  for (int a = 0; a < int(c.at(-1).size()); ++a)
    for (int b = 0; b < int(c.at(0).size()); ++b) {
      const Summand &x = c.at(-1)[a], &y = c.at(0)[b];
      if (x.obj != y.obj) CHECK_THROWS(gaussian_eliminate(c, -1, a, b));
    }
}

TEST_CASE("single elimination steps keep d squared zero") {
  Complex c = normalize(tensor_complexes(tensor_complexes(rouquier(), rouquier()), rouquier()));
  CHECK(check_complex(c).ok);
  int steps = 0;
  for (bool progress = true; progress;) {
    progress = false;
    for (int deg = c.lo; deg < c.hi() && !progress; ++deg)
      for (int a = 0; a < int(c.at(deg).size()) && !progress; ++a)
        for (int b = 0; b < int(c.at(deg + 1).size()) && !progress; ++b) {
          try {
            c = gaussian_eliminate(c, deg, a, b);
          } catch (const std::invalid_argument&) {
            continue;
          }
          CHECK(check_complex(c).ok);
          progress = true;
          ++steps;
        }
  }
  CHECK(steps > 0);
  CHECK(matches_shape(c, expected_rouquier_shape(3, false)).ok);
}

TEST_CASE("powers of the Rouquier complex") {
  CHECK(shape_str(expected_rouquier_shape(3, false)) == "(0, B, 2), (1, Bbar, 0), (2, B, -2), (3, R, -3)");
  CHECK(shape_str(expected_rouquier_shape(2, false)) == "(0, Bbar, 1), (1, B, -1), (2, R, -2)");
  CHECK(shape_str(expected_rouquier_shape(2, true)) == "(-2, R, 2), (-1, Bbar, 1), (0, B, -1)");
  for (int n = 1; n <= 5; ++n) {
    CAPTURE(n);
    std::vector<ReductionTrace> traces;
    Complex c = rouquier_power(n, false, &traces);
    CHECK(c.total_summands() == n + 1);
    CHECK(check_complex(c).ok);
    auto rep = matches_shape(c, expected_rouquier_shape(n, false), n >= 2);
    CHECK_MESSAGE(rep.ok, rep.message);
    for (const auto& t : traces) CHECK(t.d2_every_step);
  }
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    Complex c = rouquier_power(n, true);
    CHECK(c.total_summands() == n + 1);
    auto rep = matches_shape(c, expected_rouquier_shape(n, true));
    CHECK_MESSAGE(rep.ok, rep.message);
  }
  CHECK_THROWS(rouquier_power(0, false));
}

TEST_CASE("shape comparison negative controls") {
  Complex c = rouquier_power(3, false);
  Shape s = expected_rouquier_shape(3, false);
  s[1].shift += 2;
  CHECK_FALSE(matches_shape(c, s).ok);
  Shape swapped = expected_rouquier_shape(3, false);
  std::swap(swapped[0].label, swapped[1].label);
  CHECK_FALSE(matches_shape(c, swapped).ok);
  Complex bad = c;
  bad.d[0][0][0] = Q(0) * bad.d[0][0][0];
  CHECK_FALSE(generator_images_ok(bad));
  CHECK(generator_images_ok(rouquier_power(2, false)));
}

TEST_CASE("complex serialization") {
  ReductionTrace t;
  Complex c = reduce(tensor_complexes(rouquier(), rouquier()), &t);
  auto j = nlohmann::json::parse(complex_json(c, &t));
  CHECK(j["lo"] == 0);
  CHECK(j["terms"].size() == 3);
  CHECK(j["terms"][0]["summands"][0]["label"] == "Bbar");
  CHECK(j["trace"]["d2_every_step"] == true);
  CHECK(j["trace"]["eliminated"].size() == t.steps.size());
}
