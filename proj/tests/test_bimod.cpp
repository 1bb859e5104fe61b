#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oddsoergel/bimod.hpp"

#include <random>

using namespace osb;

namespace {

SkewPoly x(int i) { return SkewPoly::var(2, i); }
SkewPoly one() { return SkewPoly::constant(2, 1); }

Obj R() { return base(BaseTag::UnitR); }
Obj U() { return base(BaseTag::U); }
Obj Ind() { return base(BaseTag::Ind); }
Obj Res() { return base(BaseTag::Res); }
Obj Us() { return base(BaseTag::Us); }
Obj B() { return shift(tensor(Ind(), Res()), -1); }
Obj Bbar() { return shift(tensor_all({Ind(), Us(), Res()}), -1); }

SkewPoly random_poly(std::mt19937& rng, int max_total) {
  std::uniform_int_distribution<int> e(0, max_total), coef(-3, 3);
  SkewPoly p(2);
  for (int t = 0; t < 3; ++t) {
    int a = e(rng), b = e(rng);
    if (a + b <= max_total) p += SkewPoly::mono(2, Mono::of(a, b), coef(rng));
  }
  return p;
}

// Dimension of {n in N_e : c n = n c for all c in cs}, computed on a k-basis of
// N_e without the module-level solver.
int commutant_dim(const Obj& n, int e, const std::vector<SkewPoly>& cs) {
  std::vector<Elem> basis;
  for (int b = 0; b < n->rank(); ++b) {
    int k = e - n->degs[b];
    if (k < 0 || k % 2) continue;
    for (const auto& m : monomials_of_total(2, k / 2)) {
      Elem v(n->rank(), SkewPoly(2));
      v[b] = SkewPoly::mono(2, m);
      basis.push_back(v);
    }
  }
  if (basis.empty()) return 0;
  std::map<std::tuple<int, int, uint32_t>, int> key;
  std::vector<std::map<int, Q>> rows;
  for (const auto& v : basis) {
    std::map<int, Q> row;
    for (size_t g = 0; g < cs.size(); ++g) {
      PMat a = n->act(cs[g]);
      for (int b = 0; b < n->rank(); ++b) {
        SkewPoly d = cs[g] * v[b];
        for (int b0 = 0; b0 < n->rank(); ++b0)
          if (!v[b0].is_zero()) d -= v[b0] * a.at(b0, b);
        for (const auto& [m, q] : d.terms()) {
          auto [it, fresh] = key.emplace(std::tuple{int(g), b, m.key}, int(key.size()));
          row[it->second] += q;
        }
      }
    }
    rows.push_back(row);
  }
  QMat m(rows.size(), std::vector<Q>(key.size() + 1));
  for (size_t r = 0; r < rows.size(); ++r)
    for (auto& [c, q] : rows[r]) m[r][c] = q;
  return int(basis.size()) - rank(m);
}

void check_representation(const Obj& m) {
  const auto& rho = m->rho;
  REQUIRE(rho.size() >= 2);
  CHECK(rho[0] * rho[1] + rho[1] * rho[0] == PMat(m->rank(), m->rank(), m->nvars()));
  for (int a = 0; a < m->rank(); ++a)
    for (int b = 0; b < m->rank(); ++b)
      for (size_t i = 0; i < rho.size(); ++i) {
        const PMat& g = rho[i];
        int gd = *ring_generators(m->right)[i].homogeneous_degree();
        CHECK(g.at(a, b).is_homogeneous_of(gd + m->degs[a] - m->degs[b]));
        if (m->left == Ring::Rs) CHECK(is_invariant(1, g.at(a, b)));
      }
}

}  // namespace

TEST_CASE("right actions are anticommuting representations") {
  for (const auto& m : {R(), U(), Ind(), Res(), Us(), B(), Bbar(), tensor(Res(), Ind()), tensor(B(), B()),
                        tensor_all({Res(), U(), Ind()})})
    check_representation(m);
}

TEST_CASE("right action of arbitrary elements is multiplicative") {
  std::mt19937 rng(3);
  for (const auto& m : {Res(), B(), Bbar(), tensor(B(), U())}) {
    CHECK(m->act(x(1)) == m->rho[0]);
    for (int t = 0; t < 10; ++t) {
      SkewPoly f = random_poly(rng, 3), g = random_poly(rng, 3);
      CHECK(m->act(f * g) == m->act(f) * m->act(g));
      CHECK(m->act(f + g) == m->act(f) + m->act(g));
    }
  }
}

TEST_CASE("restriction coordinates reassemble the element") {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    SkewPoly f = random_poly(rng, 5);
    auto c = Res()->coords_of(f);
    CHECK(c[0] + c[1] * x(1) == f);
  }
}

TEST_CASE("pure tensors are balanced over the invariants") {
  std::mt19937 rng(9);
  std::vector<Obj> fs = {Ind(), Res()};
  for (int t = 0; t < 20; ++t) {
    SkewPoly f = random_poly(rng, 3), g = random_poly(rng, 3);
    for (const auto& e : {E1(), E2(), E1() * E2()}) CHECK(pure(fs, {f * e, g}) == pure(fs, {f, e * g}));
    CHECK(pure(fs, {f * x(1), g}) == elem_scale(f, pure(fs, {x(1), g})));
  }
  std::vector<Obj> fu = {Ind(), Us(), Res()};
  for (int t = 0; t < 10; ++t) {
    SkewPoly f = random_poly(rng, 3), g = random_poly(rng, 3);
    CHECK(pure(fu, {f * E2(), one(), g}) == pure(fu, {f, E2(), g}));
    CHECK(pure(fu, {f, E2(), g}) == pure(fu, {f, one(), -E2() * g}));
  }
}

TEST_CASE("Hom solver agrees with the commutant computation") {
  std::vector<SkewPoly> xs = {x(1), x(2)}, es = {E1(), E2()};
  for (const auto& n : {R(), U(), B(), Bbar(), tensor(B(), B())})
    for (int d = -4; d <= 8; ++d) {
      CAPTURE(n->name);
      CAPTURE(d);
      CHECK(hom_dim(R(), n, d) == commutant_dim(n, d, xs));
      // maps out of R (x) R over the invariants are commutants of the invariants
      CHECK(hom_dim(B(), n, d) == commutant_dim(n, d - 1, es));
    }
}

TEST_CASE("graded Hom series of small pairs") {
  auto series = graded_hom_series(R(), R(), 12);
  for (auto [d, dim] : series) {
    int expect = (d >= 0 && d % 4 == 0) ? d / 4 + 1 : 0;
    CHECK(dim == expect);
  }
  for (auto [d, dim] : graded_hom_series(R(), U(), 12)) CHECK(dim == 0);
  CHECK(graded_hom_series(B(), B(), 9, 2) == graded_hom_series(B(), B(), 9, 1));
}

TEST_CASE("every Hom basis element verifies") {
  for (int d : {-2, 0, 2})
    for (const auto& f : hom_basis(B(), tensor(B(), B()), d)) CHECK(verify_morphism(f).ok);
}

TEST_CASE("morphism verification rejects a fake map") {
  Obj b = B();
  Morphism m = from_images(b, R(), 1, {{one()}, {x(1)}});
  CHECK(verify_morphism(m).ok);
  Morphism fake = from_images(b, R(), 1, {{one()}, {x(2)}});
  CHECK_FALSE(verify_morphism(fake).ok);
  Morphism wrong_degree = from_images(b, R(), 1, {{x(1)}, {x(1) * x(1)}});
  CHECK_FALSE(verify_morphism(wrong_degree).ok);
}

TEST_CASE("tensor products of morphisms respect composition") {
  Obj b = B();
  Morphism m = from_images(b, R(), 1, {{one()}, {x(1)}});
  Morphism id = identity(b);
  Morphism a = compose(tensor_morphisms(m, id), tensor_morphisms(identity(R()), m));
  Morphism c = compose(tensor_morphisms(id, m), tensor_morphisms(m, identity(R())));
  Morphism mm = tensor_morphisms(m, m);
  CHECK(verify_morphism(mm).ok);
  CHECK(same_map(mm, a));
  CHECK(same_map(mm, c));
}

TEST_CASE("isomorphisms between standard objects") {
  auto uu = find_isomorphism(tensor(U(), U()), R());
  REQUIRE(uu);
  CHECK(verify_morphism(uu->fwd).ok);
  CHECK(same_map(compose(uu->fwd, uu->inv), identity(tensor(U(), U()))));
  for (const auto& other : {tensor(B(), U()), tensor(U(), B())}) {
    auto iso = find_isomorphism(other, Bbar());
    REQUIRE(iso);
    CHECK(same_map(compose(iso->inv, iso->fwd), identity(Bbar())));
  }
  CHECK_FALSE(find_isomorphism(B(), Bbar()));
  CHECK_FALSE(find_isomorphism(R(), U()));
}

TEST_CASE("splitting a projection of a direct sum") {
  Obj s = direct_sum({B(), shift(R(), 3)});
  Morphism e(s, s, 0);
  e.mat.at(0, 0) = one();
  e.mat.at(1, 1) = one();
  Splitting sp = split_idempotent(e, "B");
  CHECK(sp.summand->rank() == 2);
  CHECK(find_isomorphism(sp.summand, B()));
  CHECK(same_map(compose(sp.incl, sp.proj), identity(sp.summand)));
  CHECK(verify_morphism(sp.incl).ok);
  CHECK(verify_morphism(sp.proj).ok);
  Morphism bad = Q(2) * e;
  CHECK_THROWS(split_idempotent(bad));
}
