#include "oddsoergel/calculus.hpp"
#include "oddsoergel/complexes.hpp"
#include "oddsoergel/grothendieck.hpp"
#include "oddsoergel/linalg.hpp"
#include "oddsoergel/threestrand.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

using namespace osb;
using namespace osb::objs;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int workers() {
  int w = int(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ODDSOERGEL_WORKERS")) w = std::atoi(env);
  return std::max(1, w);
}

// Column space rank of a family of polynomials in a common slice.
int poly_rank(const std::vector<SkewPoly>& ps) {
  std::map<uint32_t, int> col;
  for (const auto& p : ps)
    for (const auto& [m, q] : p.terms()) col.emplace(m.key, int(col.size()));
  Echelon e(int(col.size()));
  for (const auto& p : ps) {
    SparseRow r;
    for (const auto& [m, q] : p.terms()) r.push_back({col.at(m.key), q});
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    e.insert(r);
  }
  return e.rank();
}

std::vector<SkewPoly> slice2(int d) {
  std::vector<SkewPoly> out;
  for (Mono m : monomials_of_total(2, d / 2)) out.push_back(SkewPoly::mono(2, m));
  return out;
}

Outcome demazure_slices() {
  Outcome o;
  for (int d = 0; d <= 20 && o.ok; d += 2) {
    auto basis = slice2(d);
    for (const auto& p : basis) {
      o.require(demazure(1, act_s(1, p)) == -act_s(1, demazure(1, p)), "ds = -sd fails in degree " + std::to_string(d));
      o.require(demazure(1, demazure(1, p)).is_zero(), "dd = 0 fails in degree " + std::to_string(d));
    }
    // ker on the slice d, by exact nullspace over the monomials
    std::map<uint32_t, int> col;
    std::vector<std::map<int, Q>> imgs;
    for (const auto& p : basis) {
      std::map<int, Q> row;
      SkewPoly dp = demazure(1, p);
      for (const auto& [m, q] : dp.terms()) {
        auto [it, fresh] = col.emplace(m.key, int(col.size()));
        row[it->second] = q;
      }
      imgs.push_back(row);
    }
    std::map<int, SparseRow> rows;
    for (size_t i = 0; i < imgs.size(); ++i)
      for (const auto& [k, q] : imgs[i]) rows[k].push_back({int(i), q});
    Echelon e(int(basis.size()));
    for (auto& [k, r] : rows) e.insert(r);
    std::vector<SkewPoly> ker;
    for (const auto& v : e.nullspace()) {
      SkewPoly p(2);
      for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) p += basis[i] * v[i];
      ker.push_back(p);
    }
    std::vector<SkewPoly> im;
    for (const auto& p : slice2(d + 2)) im.push_back(demazure(1, p));
    int rk = poly_rank(ker), ri = poly_rank(im);
    std::vector<SkewPoly> both = ker;
    both.insert(both.end(), im.begin(), im.end());
    o.require(rk == ri && poly_rank(both) == rk,
              "ker != im in degree " + std::to_string(d) + " (" + std::to_string(rk) + " vs " + std::to_string(ri) + ")");
    o.require(rk == int(degree_slice(Ring::Rs, d).size()), "kernel dimension differs from the E-monomial count");
  }
  return o;
}

Outcome relation_suite_check() {
  Outcome o;
  auto reps = relation_suite(workers());
  std::set<std::string> names;
  for (const auto& r : reps) {
    names.insert(r.name);
    o.require(r.pass, "relation '" + r.name + "' fails: " + r.witness);
  }
  for (const char* n : {"h0 d1", "d2 = d3 j", "d3 h3", "h0 h3", "d3' d1", "d3' h3", "d1 h0 + h3 d3'"})
    o.require(names.count(n) == 1, std::string("missing identity ") + n);

  auto e = idempotents_BB();
  Morphism flipped = Q(-1) * e.e_second;
  Morphism idbb = id(tensor(B(), B()));
  o.require(!same_map(compose(flipped, flipped), flipped), "sign-flipped idempotent is still idempotent");
  o.require(!same_map(e.e_first + flipped, idbb), "sign-flipped idempotents still sum to the identity");
  o.require(!compare("flipped sum", "e1 - e2", e.e_first + flipped, "id", idbb).pass, "comparison accepts the flipped sum");

  Morphism fake = from_images(B(), R(), 1, {{SkewPoly::constant(2, 1)}, {SkewPoly::var(2, 2)}});
  o.require(!verify_morphism(fake).ok, "fake morphism passes verification");
  o.require(!compare("fake", "fake", fake, "m", named("m")).pass, "fake morphism equals m");
  if (o.ok) o.detail = std::to_string(reps.size()) + " relations, 3 negative controls rejected";
  return o;
}

Outcome idempotent_decomposition() {
  Outcome o;
  auto e = idempotents_BB();
  Obj bb = tensor(B(), B());
  o.require(same_map(compose(e.e_first, e.e_first), e.e_first), "e1 not idempotent");
  o.require(same_map(compose(e.e_second, e.e_second), e.e_second), "e2 not idempotent");
  o.require(compose(e.e_first, e.e_second).is_zero() && compose(e.e_second, e.e_first).is_zero(), "not orthogonal");
  o.require(same_map(e.e_first + e.e_second, id(bb)), "sum is not the identity");

  std::multiset<std::string> found;
  for (const auto& ei : {e.e_first, e.e_second}) {
    auto s = split_idempotent(ei);
    o.require(same_map(compose(s.incl, s.proj), id(s.summand)), "incl/proj composite is not the identity");
    o.require(same_map(compose(s.proj, s.incl), ei), "proj/incl composite is not the idempotent");
    for (const auto& [name, target] : {std::pair{"B{-1}", shift(B(), -1)}, std::pair{"Bbar{1}", shift(Bbar(), 1)}}) {
      auto iso = find_isomorphism(s.summand, target);
      if (!iso) continue;
      o.require(same_map(compose(iso->fwd, iso->inv), id(s.summand)), "isomorphism composite is not the identity");
      o.require(same_map(compose(iso->inv, iso->fwd), id(target)), "isomorphism composite is not the identity");
      found.insert(name);
    }
  }
  o.require(found == std::multiset<std::string>{"B{-1}", "Bbar{1}"}, "summands are not B{-1} and Bbar{1}");
  if (o.ok) o.detail = "B B = B{-1} + Bbar{1}";
  return o;
}

Outcome invertibility() {
  Outcome o;
  std::vector<std::pair<std::string, Complex>> cases = {
      {"R R'", tensor_complexes(rouquier(), rouquier_inv())}, {"R' R", tensor_complexes(rouquier_inv(), rouquier())}};
  std::ostringstream det;
  for (auto& [name, c] : cases) {
    ReductionTrace t;
    Complex r = reduce(c, &t);
    bool one = r.lo == 0 && r.terms.size() == 1 && r.terms[0].size() == 1 && r.terms[0][0].label() == "R" &&
               r.terms[0][0].shift == 0;
    o.require(one, name + " does not reduce to R: " + shape_str(shape_of(r)));
    o.require(t.d2_every_step, name + ": d^2 != 0 after an elimination");
    det << (det.tellp() ? "; " : "") << name << " -> R in " << t.steps.size() << " steps";
  }
  if (o.ok) o.detail = det.str();
  return o;
}

Outcome rouquier_powers() {
  Outcome o;
  for (bool inverse : {false, true})
    for (int n = 1; n <= (inverse ? 3 : 5); ++n) {
      std::vector<ReductionTrace> traces;
      Complex c = rouquier_power(n, inverse, &traces);
      std::string name = std::string(inverse ? "R'^" : "R^") + std::to_string(n);
      o.require(int(c.terms.size()) == n + 1, name + " has " + std::to_string(c.terms.size()) + " terms");
      auto rep = matches_shape(c, expected_rouquier_shape(n, inverse), n == 2 || n == 3);
      o.require(rep.ok, name + ": " + rep.message);
      o.require(d_squared_zero(c), name + ": d^2 != 0");
      for (const auto& t : traces) o.require(t.d2_every_step, name + ": d^2 != 0 during reduction");
    }
  if (o.ok) o.detail = "R^3 = " + shape_str(shape_of(rouquier_power(3, false)));
  return o;
}

// Expansion of num / (1 - q^4)^2 with num given as exponent -> coefficient.
std::map<int, long long> closed_form(const std::map<int, long long>& num, int cutoff) {
  std::map<int, long long> out;
  for (auto [e, c] : num)
    for (int j = 0; e + 4 * j <= cutoff; ++j) out[e + 4 * j] += c * (j + 1);
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Outcome hom_series() {
  Outcome o;
  struct Pair {
    std::string name;
    Obj x, y;
    std::map<int, long long> num;
  };
  std::vector<Pair> pairs = {{"(R,R)", R(), R(), {{0, 1}}},
                             {"(R,U)", R(), U(), {}},
                             {"(B,R)", B(), R(), {{1, 1}}},
                             {"(R,B)", R(), B(), {{3, 1}}},
                             {"(B,B)", B(), B(), {{0, 1}, {4, 1}}},
                             {"(B,Bbar)", B(), Bbar(), {{2, 2}}}};
  const int d_max = 17;
  for (const auto& p : pairs) {
    auto got = graded_hom_series(p.x, p.y, d_max, workers());
    std::map<int, long long> computed;
    for (auto [d, n] : got)
      if (n) computed[d] = n;
    o.require(computed == closed_form(p.num, d_max), p.name + " differs from its closed form");
  }
  o.require(hom_dim(B(), B(), 0) == 1, "dim End^0(B) != 1");
  o.require(hom_dim(Bbar(), Bbar(), 0) == 1, "dim End^0(Bbar) != 1");
  if (o.ok) o.detail = "6 pairs to degree 17, End^0(B) = End^0(Bbar) = 1";
  return o;
}

Outcome k0_consistency() {
  Outcome o;
  for (bool inverse : {false, true}) {
    Complex gen = inverse ? rouquier_inv() : rouquier();
    Complex c = gen;
    K0Elem g = euler_class(gen), power = g;
    for (int n = 2; n <= (inverse ? 3 : 5); ++n) {
      Complex t = tensor_complexes(c, gen);
      c = reduce(t);
      power = power * g;
      o.require(euler_class(t) == euler_class(c), "euler class changes under reduce at n = " + std::to_string(n));
      o.require(euler_class(c) == power, "euler class of the power is not the power of the class");
    }
  }

  K0Elem b = K0Elem::b();
  K0Elem sum;
  for (const auto& piece : decompose(tensor(B(), B()))) sum = sum + class_of(piece.summand);
  o.require(b * b == LaurentPoly::q(-1) * b + LaurentPoly::q(1) * K0Elem::bc(), "[B]^2 rule");
  o.require(sum == b * b, "decomposition of B B has class " + sum.str());

  auto d = [](const LaurentPoly& num) { return FormValue{num}; };
  o.require(trace(K0Elem::one()) == d(1), "tr(1)");
  o.require(trace(b) == d(LaurentPoly::q(3)), "tr(b)");
  o.require(trace(K0Elem::c()) == d(0), "tr(c)");
  o.require(trace(K0Elem::bc()) == d(LaurentPoly::q(1)), "tr(bc)");
  return o;
}

Outcome obstruction() {
  Outcome o;
  auto r = obstruction_report(12, workers());
  o.require(r.sufficient_degree, "insufficient degree");
  o.require(r.inclusion_dim == 1, "inclusion space has dimension " + std::to_string(r.inclusion_dim));
  o.require(r.injective, "not injective beyond degree " + std::to_string(r.injective_upto));
  o.require(r.cokernel_match, "cokernel dims differ from Bbar1");
  o.require(r.exact, "sequence not exact on some slice");
  o.require(!r.split && r.section_dim == 0, "a section exists");
  if (o.ok) o.detail = "no section among " + std::to_string(r.section_candidates) + " candidate maps";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> cs = {{1, "Demazure calculus on slices <= 20", 5, demazure_slices},
                               {2, "relation suite and negative controls", 30, relation_suite_check},
                               {3, "idempotent decomposition of B B", 30, idempotent_decomposition},
                               {4, "invertibility of the Rouquier complex", 10, invertibility},
                               {5, "Rouquier powers", 60, rouquier_powers},
                               {6, "graded Hom against closed forms", 60, hom_series},
                               {7, "K0 consistency", 60, k0_consistency},
                               {8, "three-strand obstruction", 300, obstruction}};
  int failed = 0;
  for (const auto& c : cs) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && s > c.budget_s) {
      o.ok = false;
      o.detail = "over the time budget of " + std::to_string(int(c.budget_s)) + " s";
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << c.id << " " << c.name << " (" << std::fixed << std::setprecision(2)
              << s << " s)" << (o.detail.empty() ? "" : ": " + o.detail) << std::endl;
  }
  return failed ? 1 : 0;
}
