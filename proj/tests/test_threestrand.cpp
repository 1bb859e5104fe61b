#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oddsoergel/threestrand.hpp"

#include <json.hpp>

using namespace osb;

namespace {

SkewPoly x(int i) { return SkewPoly::var(3, i); }

// dim of the degree-2k slice of R3
long long h(int k) { return k < 0 ? 0 : (k + 1) * (k + 2) / 2; }

// Free left module with generators in the given degrees.
long long free_dim(const std::vector<int>& gen_degs, int d) {
  long long n = 0;
  for (int g : gen_degs)
    if ((d - g) % 2 == 0) n += h((d - g) / 2);
  return n;
}

// Coefficient of q^(2k) in 1 / ((1 - q^2)(1 - q^4)(1 - q^6)).
long long sym_dim(int k) {
  long long n = 0;
  for (int a = 0; 2 * a <= k; ++a)
    for (int b = 0; 2 * a + 3 * b <= k; ++b) ++n;
  return n;
}

bool in_span(const DegSlice& s, const SkewPoly& p) {
  DegSlice t = s;
  t.basis.push_back(p);
  std::map<uint32_t, int> col;
  for (const auto& f : t.basis)
    for (const auto& [m, q] : f.terms()) col.emplace(m.key, int(col.size()));
  QMat m(t.basis.size(), std::vector<Q>(col.size()));
  for (size_t i = 0; i < t.basis.size(); ++i)
    for (const auto& [mo, q] : t.basis[i].terms()) m[i][col[mo.key]] = q;
  return rank(m) == s.dim();
}

}  // namespace

TEST_CASE("demazure operators on slices") {
  for (int k = 0; k <= 5; ++k)
    for (Mono m : monomials_of_total(3, k)) {
      SkewPoly p = SkewPoly::mono(3, m);
      for (int i = 1; i <= 2; ++i) {
        CHECK(demazure(i, demazure(i, p)).is_zero());
        CHECK(demazure(i, act_s(i, p)) == -act_s(i, demazure(i, p)));
      }
    }
  CHECK(demazure(1, x(1)) == SkewPoly::constant(3, 1));
  CHECK(demazure(1, x(3)).is_zero());
  CHECK(demazure(2, x(2)) == SkewPoly::constant(3, 1));
}

TEST_CASE("invariant slices") {
  auto r1 = invariant_slice(Which::First, 2);
  CHECK(r1.dim() == 2);
  CHECK(in_span(r1, x(1) - x(2)));
  CHECK(in_span(r1, x(3)));
  CHECK(in_span(invariant_slice(Which::First, 4), x(1) * x(2)));
  CHECK(invariant_slice(Which::Both, 0).dim() == 1);
  CHECK_FALSE(in_span(invariant_slice(Which::Both, 2), x(1) - x(2)));
  CHECK_THROWS_AS(invariant_slice(Which::First, 3), std::invalid_argument);

  for (int d = 0; d <= 14; d += 2) {
    auto a = invariant_slice(Which::Both, d, false);
    auto b = invariant_slice(Which::Both, d, true);
    CHECK(a.dim() == b.dim());
    for (const auto& p : b.basis) CHECK(in_span(a, p));
    CHECK(a.dim() == sym_dim(d / 2));
    for (const auto& p : a.basis) {
      CHECK(demazure(1, p).is_zero());
      CHECK(demazure(2, p).is_zero());
    }
  }
}

TEST_CASE("x3 is central on the generator of B1") {
  Obj b1 = three_word({"B1"});
  Elem gen(b1->rank(), SkewPoly(3));
  gen[0] = SkewPoly::constant(3, 1);
  PMat a = b1->act(x(3));
  Elem right(b1->rank(), SkewPoly(3));
  for (int i = 0; i < b1->rank(); ++i)
    for (int j = 0; j < b1->rank(); ++j) right[j] += gen[i] * a.at(i, j);
  CHECK(right == elem_scale(x(3), gen));

  PMat a1 = b1->act(x(1));
  Elem r1(b1->rank(), SkewPoly(3));
  for (int j = 0; j < b1->rank(); ++j) r1[j] = a1.at(0, j);
  CHECK(r1 != elem_scale(x(1), gen));
}

TEST_CASE("bimodule slices") {
  CHECK(bimodule_slice({"B1"}, -1) == 1);
  CHECK(bimodule_slice({"B1", "B2", "B1"}, -3) == 1);
  CHECK(bimodule_slice({"B1", "U1"}, -1) == 1);
  CHECK(bimodule_slice({"B1"}, -3) == 0);
  for (int d = -5; d <= 13; ++d) {
    CHECK(bimodule_slice({"B1"}, d) == free_dim({-1, 1}, d));
    CHECK(bimodule_slice({"B2"}, d) == free_dim({-1, 1}, d));
    CHECK(bimodule_slice({"B1", "U1"}, d) == free_dim({-1, 1}, d));
    CHECK(bimodule_slice({"B1", "B2", "B1"}, d) == free_dim({-3, -1, -1, -1, 1, 1, 1, 3}, d));
    CHECK(bimodule_slice({"B1", "B2", "B1"}, d) == bimodule_slice({"B2", "B1", "B2"}, d));
  }
  CHECK_THROWS_AS(three_word({"B3"}), std::invalid_argument);
}

TEST_CASE("quotient over odd symmetric functions") {
  auto dims = b121hat_dims(11, 2);
  CHECK(dims.at(-3) == 1);
  CHECK(dims.at(-1) == 5);
  for (auto [d, n] : dims) {
    CHECK(n == free_dim({-3, -1, -1, 1, 1, 3}, d));
    CHECK(n == bimodule_slice({"B1", "B2", "B1"}, d) - bimodule_slice({"B1", "U1"}, d));
  }
  CHECK(b121hat_dims(7, 1) == std::map<int, int>{{-3, 1}, {-1, 5}, {1, 14}, {3, 29}, {5, 50}, {7, 77}});
}

TEST_CASE("obstruction report") {
  auto r = obstruction_report(12, 2);
  CHECK(r.ok());
  CHECK(r.inclusion_dim == 1);
  CHECK(r.injective);
  CHECK(r.injective_upto == 12);
  CHECK(r.cokernel_match);
  CHECK(r.exact);
  CHECK(r.quotient_dim == 1);
  CHECK_FALSE(r.split);
  CHECK(r.section_dim == 0);
  auto hat = b121hat_dims(12, 1);
  REQUIRE(r.rows.size() == hat.size());
  for (const auto& row : r.rows) {
    CHECK(row.hat_dim == hat.at(row.degree));
    CHECK(row.triple_dim - row.image_rank == row.bbar_dim);
  }

  auto j = nlohmann::json::parse(obstruction_json(r));
  CHECK(j["ok"] == true);
  CHECK(j["slices"].size() == r.rows.size());

  auto serial = obstruction_report(9, 1);
  auto parallel = obstruction_report(9, 3);
  CHECK(obstruction_json(serial) == obstruction_json(parallel));

  auto small = obstruction_report(6, 1);
  CHECK_FALSE(small.sufficient_degree);
  CHECK_FALSE(small.ok());
}
