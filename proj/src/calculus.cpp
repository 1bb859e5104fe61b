#include "oddsoergel/calculus.hpp"

#include <json.hpp>

#include <functional>
#include <future>
#include <map>
#include <sstream>
#include <stdexcept>

namespace osb {

namespace objs {
Obj R() { return base(BaseTag::UnitR); }
Obj U() { return base(BaseTag::U); }
Obj Rs() { return base(BaseTag::UnitRs); }
Obj Us() { return base(BaseTag::Us); }
Obj Ind() { return base(BaseTag::Ind); }
Obj Res() { return base(BaseTag::Res); }
Obj B() { return renamed(shift(tensor(Ind(), Res()), -1), "B"); }
Obj Bbar() { return renamed(shift(tensor_all({Ind(), Us(), Res()}), -1), "Bbar"); }
}  // namespace objs

Morphism tens(const Morphism& f, const Morphism& g) { return tensor_morphisms(f, g); }

Morphism tens(const std::vector<Morphism>& fs) {
  Morphism r = fs.at(0);
  for (size_t i = 1; i < fs.size(); ++i) r = tensor_morphisms(r, fs[i]);
  return r;
}

Morphism id(const Obj& m) { return identity(m); }

Morphism chain(const std::vector<Morphism>& fs) {
  Morphism r = fs.at(0);
  for (size_t i = 1; i < fs.size(); ++i) r = compose(r, fs[i]);
  return r;
}

namespace {

using namespace objs;
using Slots = std::vector<SkewPoly>;

SkewPoly c(const Q& q) { return SkewPoly::constant(2, q); }
SkewPoly x(int i) { return SkewPoly::var(2, i); }
SkewPoly s(const SkewPoly& p) { return act_s(1, p); }
SkewPoly d(const SkewPoly& p) { return demazure(1, p); }

Obj word(const std::vector<Obj>& fs, int sh = 0) { return shift(tensor_all(fs), sh); }

// Map from a tensor of base objects given on pure tensors of left basis
// elements; slots hold 1 for rank one factors and 1 or x_v for Res.
Morphism by_formula(const std::vector<Obj>& src, int src_shift, const Obj& tgt, int degree,
                    const std::function<Elem(const Slots&)>& fn) {
  Obj so = word(src, src_shift);
  std::vector<Elem> images;
  for (int a = 0; a < so->rank(); ++a) {
    Slots slots(src.size(), c(1));
    int rest = a;
    for (int k = int(src.size()) - 1; k >= 0; --k) {
      int r = src[k]->rank(), i = rest % r;
      rest /= r;
      if (i == 1) slots[k] = x(src[k]->decomp_var);
    }
    images.push_back(fn(slots));
  }
  return from_images(so, tgt, degree, images);
}

Elem pt(const std::vector<Obj>& fs, const Slots& slots) { return pure(fs, slots); }

Elem neg(const Elem& e) { return elem_scale(c(-1), e); }

Morphism must_invert(const Morphism& f) {
  auto inv = inverse_of(f);
  if (!inv) throw std::logic_error("catalog map is not invertible");
  return *inv;
}

// Chooses the sign of raw so that the given composite check equals the identity.
Morphism normalize_sign(const Morphism& raw, const std::function<Morphism(const Morphism&)>& check) {
  Morphism t = check(raw);
  Morphism one = identity(t.src);
  if (same_map(t, one)) return raw;
  if (same_map(t, Q(-1) * one)) return Q(-1) * raw;
  throw std::logic_error("sign normalization: composite is not +-identity");
}

std::map<std::string, Morphism> build_catalog() {
  std::map<std::string, Morphism> m;
  Obj r = R(), u = U(), rs = Rs(), us = Us(), ind = Ind(), res = Res(), b = B(), bb = Bbar();

  // thick calculus
  m["alpha0"] = by_formula({ind, res}, 0, r, 0, [&](const Slots& v) { return Elem{v[0] * v[1]}; });
  m["beta0"] = by_formula({rs}, 0, word({res, ind}), 0, [&](const Slots&) { return pt({res, ind}, {c(1), c(1)}); });
  m["alpha1"] = by_formula({res, u, ind}, 0, rs, -2,
                           [&](const Slots& v) { return Elem{d(s(v[0]) * v[2])}; });
  m["dsecond"] = m["alpha1"];
  m["beta1"] = by_formula({r}, 0, word({u, ind, res}), 2, [&](const Slots&) {
    return elem_add(pt({u, ind, res}, {c(1), x(1), c(1)}), neg(pt({u, ind, res}, {c(1), c(1), x(1)})));
  });
  m["dprime"] = by_formula({res, ind}, 0, us, -2, [&](const Slots& v) { return Elem{d(v[0] * v[1])}; });
  m["slide_up"] = by_formula({ind, us}, 0, word({u, ind}), 0,
                             [&](const Slots& v) { return pt({u, ind}, {c(1), s(v[0])}); });
  m["slide_up_inv"] = by_formula({u, ind}, 0, word({ind, us}), 0,
                                 [&](const Slots& v) { return pt({ind, us}, {s(v[1]), c(1)}); });
  m["slide_down"] = by_formula({us, res}, 0, word({res, u}), 0,
                               [&](const Slots& v) { return pt({res, u}, {s(v[1]), c(1)}); });
  m["slide_down_inv"] = by_formula({res, u}, 0, word({us, res}), 0,
                                   [&](const Slots& v) { return pt({us, res}, {c(1), s(v[0])}); });
  m["cupU"] = by_formula({r}, 0, word({u, u}), 0, [&](const Slots&) { return pt({u, u}, {c(1), c(1)}); });
  m["capU"] = by_formula({u, u}, 0, r, 0, [&](const Slots&) { return Elem{c(1)}; });
  m["cupUs"] = by_formula({rs}, 0, word({us, us}), 0, [&](const Slots&) { return pt({us, us}, {c(1), c(1)}); });
  m["capUs"] = by_formula({us, us}, 0, rs, 0, [&](const Slots&) { return Elem{c(1)}; });
  m["mixed_cap_res"] = by_formula({us, res, u}, 0, res, 0, [&](const Slots& v) { return Elem(res->coords_of(s(v[1]))); });
  m["mixed_cup_res"] = by_formula({res}, 0, word({us, res, u}), 0,
                                  [&](const Slots& v) { return pt({us, res, u}, {c(1), s(v[0]), c(1)}); });
  m["mixed_cap_ind"] = by_formula({u, ind, us}, 0, ind, 0, [&](const Slots& v) { return Elem{s(v[1])}; });
  m["mixed_cup_ind"] = by_formula({ind}, 0, word({u, ind, us}), 0,
                                  [&](const Slots& v) { return pt({u, ind, us}, {c(1), s(v[0]), c(1)}); });
  m["beta1_tilde"] = compose(m["beta1"], tens(m["slide_up_inv"], id(res)));

  // thin calculus
  m["m"] = reshift(m["alpha0"], b, r);
  m["delta"] = by_formula({u}, 0, b, 1, [&](const Slots&) {
    return elem_add(pt({ind, res}, {c(1), x(2)}), neg(pt({ind, res}, {x(2), c(1)})));
  });
  m["split"] = by_formula({ind, res}, -1, word({ind, res, ind, res}, -2), -1,
                          [&](const Slots& v) { return pt({ind, res, ind, res}, {v[0], c(1), c(1), v[1]}); });
  m["merge"] = by_formula({ind, res, ind, res}, -2, word({u, ind, res}, -1), -1,
                          [&](const Slots& v) { return pt({u, ind, res}, {c(1), d(v[1]), v[3]}); });
  m["psi_ur"] = by_formula({u, ind, res}, -1, word({ind, res, u}, -1), 0,
                           [&](const Slots& v) { return pt({ind, res, u}, {s(v[1]), s(v[2]), c(1)}); });
  m["psi_ru"] = by_formula({ind, res, u}, -1, word({u, ind, res}, -1), 0,
                           [&](const Slots& v) { return pt({u, ind, res}, {c(1), s(v[0]), s(v[1])}); });
  m["iso_UB"] = by_formula({u, ind, res}, -1, bb, 0,
                           [&](const Slots& v) { return pt({ind, us, res}, {s(v[1]), c(1), v[2]}); });
  m["iso_BU"] = by_formula({ind, us, res}, -1, word({ind, res, u}, -1), 0,
                           [&](const Slots& v) { return pt({ind, res, u}, {v[0], s(v[2]), c(1)}); });
  m["iso_UB_inv"] = must_invert(m["iso_UB"]);
  m["iso_BU_inv"] = must_invert(m["iso_BU"]);
  m["merge_prime"] = compose(m["merge"], m["psi_ur"]);

  Morphism idb = id(b), idu = id(u), idbb = id(bb);
  m["e_first"] = chain({tens(idb, m["m"]), m["split"]});
  m["e_second"] = Q(-1) * chain({m["merge_prime"], tens(idb, m["delta"])});

  // B -> Bbar (x) U and its use in the crossings with a downward line
  Morphism b_to_bbu = chain({tens(idb, m["cupU"]), tens(m["iso_BU_inv"], idu)});
  m["psi_down_ur"] = chain({tens(idu, m["iso_UB_inv"]), tens(m["capU"], idb), b_to_bbu});
  m["psi_down_ru"] = chain({tens(m["iso_BU"], idu), tens(idb, m["capU"]), tens(m["cupU"], idb), tens(idu, m["iso_UB"])});

  m["alpha2"] = by_formula({ind, res, ind, us, res}, -2, r, 0,
                           [&](const Slots& v) { return Elem{d(s(v[1] * v[2])) * v[4]}; });
  m["beta2"] = by_formula({r}, 0, word({ind, us, res, ind, res}, -2), 0, [&](const Slots&) {
    std::vector<Obj> f = {ind, us, res, ind, res};
    return neg(elem_add(pt(f, {x(1), c(1), c(1), c(1), c(1)}), pt(f, {c(1), c(1), c(1), c(1), x(2)})));
  });
  m["alpha3"] = by_formula({ind, us, res, ind, res}, -2, r, 0,
                           [&](const Slots& v) { return Elem{d(v[2] * v[3]) * v[4]}; });
  m["beta3"] = by_formula({r}, 0, word({ind, res, ind, us, res}, -2), 0, [&](const Slots&) {
    std::vector<Obj> f = {ind, res, ind, us, res};
    return neg(elem_add(pt(f, {x(1), c(1), c(1), c(1), c(1)}), pt(f, {c(1), c(1), c(1), c(1), x(2)})));
  });
  m["j"] = m["beta3"];
  m["extra_deg2"] = chain({m["iso_BU"], tens(m["m"], m["delta"])});

  // maps of the invertibility argument
  m["delta_bar"] = chain({m["cupU"], tens(m["delta"], idu), m["iso_BU_inv"]});
  m["d1"] = tens(idb, m["delta_bar"]);
  m["d3"] = tens(m["m"], idbb);
  Morphism d1 = m["d1"], d3 = m["d3"];
  m["h0"] = normalize_sign(chain({tens(idb, m["iso_BU"]), tens(m["merge_prime"], idu), tens(idb, m["capU"])}),
                           [&](const Morphism& h) { return compose(d1, h); });
  m["h3"] = normalize_sign(chain({m["iso_BU"], tens(m["split"], idu), tens(idb, m["iso_BU_inv"])}),
                           [&](const Morphism& h) { return compose(h, d3); });
  Morphism h3 = m["h3"];
  m["d3prime"] = normalize_sign(
      chain({tens(idb, chain({m["iso_BU"], tens(m["m"], idu)})), m["iso_BU_inv"]}),
      [&](const Morphism& dp) { return compose(h3, dp); });

  for (auto& [name, f] : m) {
    auto rep = verify_morphism(f);
    if (!rep.ok) throw std::logic_error("catalog map " + name + " fails verification: " + rep.message);
  }
  return m;
}

const std::map<std::string, Morphism>& catalog() {
  static const std::map<std::string, Morphism> cat = build_catalog();
  return cat;
}

}  // namespace

Morphism named(const std::string& name) {
  const auto& cat = catalog();
  auto it = cat.find(name);
  if (it == cat.end()) throw std::invalid_argument("unknown map: " + name);
  return it->second;
}

std::vector<std::string> named_ids() {
  std::vector<std::string> out;
  for (const auto& [k, v] : catalog()) out.push_back(k);
  return out;
}

RelationReport compare(const std::string& name, const std::string& lhs_desc, const Morphism& lhs,
                       const std::string& rhs_desc, const Morphism& rhs) {
  RelationReport rep{name, lhs_desc, rhs_desc, false, ""};
  if (!same_shape(*lhs.src, *rhs.src) || !same_shape(*lhs.tgt, *rhs.tgt)) {
    rep.witness = "shape mismatch: " + lhs.src->name + "->" + lhs.tgt->name + " vs " + rhs.src->name + "->" +
                  rhs.tgt->name;
    return rep;
  }
  if (lhs.degree != rhs.degree && !(lhs.is_zero() || rhs.is_zero())) {
    rep.witness = "degree " + std::to_string(lhs.degree) + " vs " + std::to_string(rhs.degree);
    return rep;
  }
  for (int a = 0; a < lhs.mat.rows; ++a)
    for (int b = 0; b < lhs.mat.cols; ++b)
      if (lhs.mat.at(a, b) != rhs.mat.at(a, b)) {
        rep.witness = "entry (" + lhs.src->labels[a] + ", " + lhs.tgt->labels[b] + "): " + lhs.mat.at(a, b).str() +
                      " vs " + rhs.mat.at(a, b).str();
        return rep;
      }
  rep.pass = true;
  return rep;
}

namespace {

struct Relation {
  std::string name, lhs_desc, rhs_desc;
  std::function<std::pair<Morphism, Morphism>()> eval;
};

Morphism zero_like(const Morphism& f) { return Morphism(f.src, f.tgt, f.degree); }

std::vector<Relation> relations() {
  using namespace objs;
  auto N = [](const char* n) { return named(n); };
  std::vector<Relation> rs;
  auto add = [&](std::string name, std::string l, std::string r, std::function<std::pair<Morphism, Morphism>()> f) {
    rs.push_back({std::move(name), std::move(l), std::move(r), std::move(f)});
  };

  // adjunctions between induction and restriction
  add("zigzag alpha0 beta0 on Ind", "(alpha0 x id)(id x beta0)", "id_Ind", [=] {
    return std::pair{chain({tens(id(Ind()), N("beta0")), tens(N("alpha0"), id(Ind()))}), id(Ind())};
  });
  add("zigzag alpha0 beta0 on Res", "(id x alpha0)(beta0 x id)", "id_Res", [=] {
    return std::pair{chain({tens(N("beta0"), id(Res())), tens(id(Res()), N("alpha0"))}), id(Res())};
  });
  add("zigzag alpha1 beta1 on Res", "(alpha1 x id)(id x beta1)", "id_Res", [=] {
    return std::pair{chain({tens(id(Res()), N("beta1")), tens(N("alpha1"), id(Res()))}), id(Res())};
  });
  add("zigzag alpha1 beta1 on U Ind", "(id x alpha1)(beta1 x id)", "id_{U Ind}", [=] {
    Obj ui = tensor(U(), Ind());
    return std::pair{chain({tens(N("beta1"), id(ui)), tens(id(ui), N("alpha1"))}), id(ui)};
  });
  add("balanced cup", "(slide_up^-1 x id) beta1", "-x2 (x) 1^s (x) 1 - 1 (x) 1^s (x) x1", [=] {
    Morphism f = N("beta1_tilde");
    std::vector<Obj> fs = {Ind(), Us(), Res()};
    Elem img = neg(elem_add(pure(fs, {x(2), c(1), c(1)}), pure(fs, {c(1), c(1), x(1)})));
    return std::pair{f, from_images(f.src, f.tgt, f.degree, {img})};
  });

  // sliding crossings are mutually inverse
  add("crossing Ind Us", "slide_up^-1 slide_up", "id", [=] {
    return std::pair{chain({N("slide_up"), N("slide_up_inv")}), id(tensor(Ind(), Us()))};
  });
  add("crossing U Ind", "slide_up slide_up^-1", "id", [=] {
    return std::pair{chain({N("slide_up_inv"), N("slide_up")}), id(tensor(U(), Ind()))};
  });
  add("crossing Us Res", "slide_down^-1 slide_down", "id", [=] {
    return std::pair{chain({N("slide_down"), N("slide_down_inv")}), id(tensor(Us(), Res()))};
  });
  add("crossing Res U", "slide_down slide_down^-1", "id", [=] {
    return std::pair{chain({N("slide_down_inv"), N("slide_down")}), id(tensor(Res(), U()))};
  });

  // dashed cups and caps
  add("cap cup U", "capU cupU", "id_R", [=] { return std::pair{chain({N("cupU"), N("capU")}), id(R())}; });
  add("cup cap U", "cupU capU", "id_{U U}", [=] {
    return std::pair{chain({N("capU"), N("cupU")}), id(tensor(U(), U()))};
  });
  add("cap cup Us", "capUs cupUs", "id_Rs", [=] { return std::pair{chain({N("cupUs"), N("capUs")}), id(Rs())}; });
  add("cup cap Us", "cupUs capUs", "id_{Us Us}", [=] {
    return std::pair{chain({N("capUs"), N("cupUs")}), id(tensor(Us(), Us()))};
  });
  add("mixed circle on Res", "mixed_cap_res mixed_cup_res", "id_Res", [=] {
    return std::pair{chain({N("mixed_cup_res"), N("mixed_cap_res")}), id(Res())};
  });
  add("mixed cups on Res", "mixed_cup_res mixed_cap_res", "id", [=] {
    return std::pair{chain({N("mixed_cap_res"), N("mixed_cup_res")}), id(tensor_all({Us(), Res(), U()}))};
  });
  add("mixed circle on Ind", "mixed_cap_ind mixed_cup_ind", "id_Ind", [=] {
    return std::pair{chain({N("mixed_cup_ind"), N("mixed_cap_ind")}), id(Ind())};
  });
  add("mixed cups on Ind", "mixed_cup_ind mixed_cap_ind", "id", [=] {
    return std::pair{chain({N("mixed_cap_ind"), N("mixed_cup_ind")}), id(tensor_all({U(), Ind(), Us()}))};
  });
  add("mixed cap on Res through a slide", "(id x capU)(slide_down x id)", "mixed_cap_res", [=] {
    return std::pair{chain({tens(N("slide_down"), id(U())), tens(id(Res()), N("capU"))}), N("mixed_cap_res")};
  });
  add("mixed cap on Ind through a slide", "(capU x id)(id x slide_up)", "mixed_cap_ind", [=] {
    return std::pair{chain({tens(id(U()), N("slide_up")), tens(N("capU"), id(Ind()))}), N("mixed_cap_ind")};
  });

  // reflection signs defining the two trivalent vertices
  add("dashed vertex, thick form", "(id x capU)(beta1' x id_U)", "Delta", [=] {
    Morphism b1p = chain({N("beta1"), tens(N("slide_up_inv"), id(Res())), tens(id(Ind()), N("slide_down"))});
    Morphism l = chain({tens(b1p, id(U())), tens(id(tensor(Ind(), Res())), N("capU"))});
    return std::pair{reshift(l, U(), B()), N("delta")};
  });
  add("dashed vertex reflection sign", "(capU x id)(id_U x beta1)", "-(id x capU)(beta1' x id_U)", [=] {
    Morphism l = chain({tens(id(U()), N("beta1")), tens(N("capU"), id(tensor(Ind(), Res())))});
    Morphism b1p = chain({N("beta1"), tens(N("slide_up_inv"), id(Res())), tens(id(Ind()), N("slide_down"))});
    Morphism r = chain({tens(b1p, id(U())), tens(id(tensor(Ind(), Res())), N("capU"))});
    return std::pair{l, Q(-1) * r};
  });
  add("reflected vertex, left form", "(id_Us x alpha1)(id x slide_down x id)(cupUs x id)", "dprime", [=] {
    Obj ri = tensor(Res(), Ind());
    Morphism l = chain({tens(N("cupUs"), id(ri)), tens({id(Us()), N("slide_down"), id(Ind())}),
                        tens(id(Us()), N("alpha1"))});
    return std::pair{l, N("dprime")};
  });
  add("reflected vertex, right form", "(alpha1 x id_Us)(id x slide_up x id)(id x cupUs)", "-dprime", [=] {
    Obj ri = tensor(Res(), Ind());
    Morphism l = chain({tens(id(ri), N("cupUs")), tens({id(Res()), N("slide_up"), id(Us())}),
                        tens(N("alpha1"), id(Us()))});
    return std::pair{l, Q(-1) * N("dprime")};
  });

  // exactness and bubbles
  add("dot after vertex", "m Delta", "0", [=] {
    Morphism l = chain({N("delta"), N("m")});
    return std::pair{l, zero_like(l)};
  });
  add("dot after vertex, twisted", "(m x id_U)(Delta x id_U) cupU", "0", [=] {
    Morphism l = chain({N("cupU"), tens(N("delta"), id(U())), tens(N("m"), id(U()))});
    return std::pair{l, zero_like(l)};
  });
  add("reflected vertex bubble", "dprime beta0", "0", [=] {
    Morphism l = chain({N("beta0"), N("dprime")});
    return std::pair{l, zero_like(l)};
  });

  // dashed lines crossing induction and restriction lines
  add("cap slides through Ind", "(id x capUs)(slide_up^-1 x id)(id x slide_up^-1)", "capU x id_Ind", [=] {
    Morphism l = chain({tens(id(U()), N("slide_up_inv")), tens(N("slide_up_inv"), id(Us())), tens(id(Ind()), N("capUs"))});
    return std::pair{l, tens(N("capU"), id(Ind()))};
  });
  add("cup slides through Ind", "(slide_up^-1 x id)(id x slide_up^-1)(cupU x id)", "id_Ind x cupUs", [=] {
    Morphism l = chain({tens(N("cupU"), id(Ind())), tens(id(U()), N("slide_up_inv")), tens(N("slide_up_inv"), id(Us()))});
    return std::pair{l, tens(id(Ind()), N("cupUs"))};
  });
  add("dashed line over a cap", "(id_U x alpha0)(slide_up x id)", "(alpha0 x id_U)(id x slide_down)", [=] {
    return std::pair{chain({tens(N("slide_up"), id(Res())), tens(id(U()), N("alpha0"))}),
                     chain({tens(id(Ind()), N("slide_down")), tens(N("alpha0"), id(U()))})};
  });
  add("dashed line under a cup", "(slide_down x id)(id_Us x beta0)", "(id x slide_up)(beta0 x id_Us)", [=] {
    return std::pair{chain({tens(id(Us()), N("beta0")), tens(N("slide_down"), id(Ind()))}),
                     chain({tens(N("beta0"), id(Us())), tens(id(Res()), N("slide_up"))})};
  });
  add("zigzag through a crossing", "(id x capUs)(id x slide_up^-1 x id)(cupU x id)", "slide_up", [=] {
    Obj ius = tensor(Ind(), Us());
    Morphism l = chain({tens(N("cupU"), id(ius)), tens({id(U()), N("slide_up_inv"), id(Us())}),
                        tens(id(tensor(U(), Ind())), N("capUs"))});
    return std::pair{l, N("slide_up")};
  });

  // blue and dashed lines
  add("crossing squared on U B", "psi_ru psi_ur", "id_{U B}", [=] {
    return std::pair{chain({N("psi_ur"), N("psi_ru")}), id(tensor(U(), B()))};
  });
  add("crossing squared on B U", "psi_ur psi_ru", "id_{B U}", [=] {
    return std::pair{chain({N("psi_ru"), N("psi_ur")}), id(tensor(B(), U()))};
  });
  add("dot slides under crossing", "(id_U x m) psi_ru", "m x id_U", [=] {
    return std::pair{chain({N("psi_ru"), tens(id(U()), N("m"))}), tens(N("m"), id(U()))};
  });
  add("dot slides under crossing, mirrored", "(m x id_U) psi_ur", "id_U x m", [=] {
    return std::pair{chain({N("psi_ur"), tens(N("m"), id(U()))}), tens(id(U()), N("m"))};
  });
  add("vertex slides under crossing", "psi_ru (Delta x id_U) cupU", "-(id_U x Delta) cupU", [=] {
    return std::pair{chain({N("cupU"), tens(N("delta"), id(U())), N("psi_ru")}),
                     Q(-1) * chain({N("cupU"), tens(id(U()), N("delta"))})};
  });
  add("split counit left", "(m x id) split", "id_B", [=] {
    return std::pair{chain({N("split"), tens(N("m"), id(B()))}), id(B())};
  });
  add("split counit right", "(id x m) split", "id_B", [=] {
    return std::pair{chain({N("split"), tens(id(B()), N("m"))}), id(B())};
  });
  add("merge with vertex on the left", "(capU x id)(id_U x merge)(id_U x Delta x id)(cupU x id)", "id_B", [=] {
    Morphism l = chain({tens(N("cupU"), id(B())), tens({id(U()), N("delta"), id(B())}),
                        tens(id(U()), N("merge")), tens(N("capU"), id(B()))});
    return std::pair{l, id(B())};
  });
  add("merge with vertex on the right", "(id x capU)(merge' x id_U)(id x Delta x id_U)(id x cupU)", "-id_B", [=] {
    Morphism l = chain({tens(id(B()), N("cupU")), tens({id(B()), N("delta"), id(U())}),
                        tens(N("merge_prime"), id(U())), tens(id(B()), N("capU"))});
    return std::pair{l, Q(-1) * id(B())};
  });
  add("merge with crossed vertex", "(capU x id)(id_U x merge)(psi_ru x id)(id x id_U x Delta)(id x cupU)", "-id_B",
      [=] {
        Morphism l = chain({tens(id(B()), N("cupU")), tens({id(B()), id(U()), N("delta")}),
                            tens(N("psi_ru"), id(B())), tens(id(U()), N("merge")), tens(N("capU"), id(B()))});
        return std::pair{l, Q(-1) * id(B())};
      });
  add("split coassociativity", "(split x id) split", "(id x split) split", [=] {
    return std::pair{chain({N("split"), tens(N("split"), id(B()))}), chain({N("split"), tens(id(B()), N("split"))})};
  });
  add("merge associativity", "(capU x id)(id_U x merge)(merge x id)", "(id x capU)(merge' x id_U)(id x merge')",
      [=] {
        Morphism l = chain({tens(N("merge"), id(B())), tens(id(U()), N("merge")), tens(N("capU"), id(B()))});
        Morphism r = chain({tens(id(B()), N("merge_prime")), tens(N("merge_prime"), id(U())), tens(id(B()), N("capU"))});
        return std::pair{l, r};
      });
  add("split then merge", "(merge' x id)(id x split)", "(id x merge)(split x id)", [=] {
    return std::pair{chain({tens(id(B()), N("split")), tens(N("merge_prime"), id(B()))}),
                     chain({tens(N("split"), id(B())), tens(id(B()), N("merge"))})};
  });

  // decomposition of B B
  add("idempotent e_first", "e_first e_first", "e_first", [=] {
    return std::pair{compose(N("e_first"), N("e_first")), N("e_first")};
  });
  add("idempotent e_second", "e_second e_second", "e_second", [=] {
    return std::pair{compose(N("e_second"), N("e_second")), N("e_second")};
  });
  add("orthogonality e_first e_second", "e_second e_first", "0", [=] {
    Morphism l = compose(N("e_first"), N("e_second"));
    return std::pair{l, zero_like(l)};
  });
  add("orthogonality e_second e_first", "e_first e_second", "0", [=] {
    Morphism l = compose(N("e_second"), N("e_first"));
    return std::pair{l, zero_like(l)};
  });
  add("decomposition of id_{B B}", "e_first + e_second", "id_{B B}", [=] {
    return std::pair{N("e_first") + N("e_second"), id(tensor(B(), B()))};
  });
  // the mirrored vertex picture evaluates to -(Delta x id) merge
  add("reflected decomposition of id_{B B}", "split (m x id) - mirror(e_second)", "id_{B B}", [=] {
    Morphism mirrored = Q(-1) * chain({N("merge"), tens(N("delta"), id(B()))});
    Morphism l = chain({tens(N("m"), id(B())), N("split")}) - mirrored;
    return std::pair{l, id(tensor(B(), B()))};
  });
  add("auxiliary: vertex on either leg", "(id x Delta) merge' + (Delta x id) merge",
      "split Delta (id_U x m) merge", [=] {
        Morphism capo = chain({N("merge"), tens(id(U()), N("m"))});
        Morphism cupo = chain({N("delta"), N("split")});
        Morphism l = chain({N("merge_prime"), tens(id(B()), N("delta"))}) +
                     chain({N("merge"), tens(N("delta"), id(B()))});
        return std::pair{l, compose(capo, cupo)};
      });
  add("auxiliary: moving a dot across", "m x id_B", "id_B x m - Delta (id_U x m) merge", [=] {
    Morphism capo = chain({N("merge"), tens(id(U()), N("m"))});
    return std::pair{tens(N("m"), id(B())), tens(id(B()), N("m")) - compose(capo, N("delta"))};
  });
  add("auxiliary: dots on both legs", "(m x id) e_second", "(m x id) - (m x id) e_first", [=] {
    Morphism mb = tens(N("m"), id(B()));
    return std::pair{compose(N("e_second"), mb), mb - compose(N("e_first"), mb)};
  });

  // oriented calculus
  add("zigzag alpha2 beta2", "(alpha2 x id_B)(id_B x beta2)", "id_B", [=] {
    return std::pair{chain({tens(id(B()), N("beta2")), tens(N("alpha2"), id(B()))}), id(B())};
  });
  add("zigzag beta2 alpha2", "(id_Bbar x alpha2)(beta2 x id_Bbar)", "id_Bbar", [=] {
    return std::pair{chain({tens(N("beta2"), id(Bbar())), tens(id(Bbar()), N("alpha2"))}), id(Bbar())};
  });
  // with alpha3 and beta3 as displayed the unit-counit composites are -id, so
  // the adjunction is certified for the pair (-alpha3, beta3)
  add("zigzag alpha3 beta3", "(-alpha3 x id_Bbar)(id_Bbar x beta3)", "id_Bbar", [=] {
    return std::pair{chain({tens(id(Bbar()), N("beta3")), tens(Q(-1) * N("alpha3"), id(Bbar()))}), id(Bbar())};
  });
  add("zigzag beta3 alpha3", "(id_B x -alpha3)(beta3 x id_B)", "id_B", [=] {
    return std::pair{chain({tens(N("beta3"), id(B())), tens(id(B()), Q(-1) * N("alpha3"))}), id(B())};
  });
  add("clockwise circle", "alpha2 beta3", "0", [=] {
    Morphism l = compose(N("beta3"), N("alpha2"));
    return std::pair{l, zero_like(l)};
  });
  add("counterclockwise circle", "alpha3 beta2", "0", [=] {
    Morphism l = compose(N("beta2"), N("alpha3"));
    return std::pair{l, zero_like(l)};
  });
  add("downward crossing squared on U Bbar", "psi_down_ru psi_down_ur", "id", [=] {
    return std::pair{chain({N("psi_down_ur"), N("psi_down_ru")}), id(tensor(U(), Bbar()))};
  });
  add("downward crossing squared on Bbar U", "psi_down_ur psi_down_ru", "id", [=] {
    return std::pair{chain({N("psi_down_ru"), N("psi_down_ur")}), id(tensor(Bbar(), U()))};
  });
  add("blue vertex identifications", "iso_BU iso_UB", "psi_ur", [=] {
    return std::pair{chain({N("iso_UB"), N("iso_BU")}), N("psi_ur")};
  });

  // decomposition of B Bbar
  add("h0 d1", "h0 d1", "id_B", [=] { return std::pair{compose(N("d1"), N("h0")), id(B())}; });
  add("d2 = d3 j", "d3 j", "delta_bar", [=] { return std::pair{compose(N("j"), N("d3")), N("delta_bar")}; });
  add("d3 h3", "d3 h3", "id_Bbar", [=] { return std::pair{compose(N("h3"), N("d3")), id(Bbar())}; });
  add("h0 h3", "h0 h3", "0", [=] {
    Morphism l = compose(N("h3"), N("h0"));
    return std::pair{l, zero_like(l)};
  });
  add("d3' d1", "d3' d1", "0", [=] {
    Morphism l = compose(N("d1"), N("d3prime"));
    return std::pair{l, zero_like(l)};
  });
  add("d3' h3", "d3' h3", "id_Bbar", [=] { return std::pair{compose(N("h3"), N("d3prime")), id(Bbar())}; });
  add("d1 h0 + h3 d3'", "d1 h0 + h3 d3'", "id_{B Bbar}", [=] {
    return std::pair{compose(N("h0"), N("d1")) + compose(N("d3prime"), N("h3")), id(tensor(B(), Bbar()))};
  });
  return rs;
}

}  // namespace

std::vector<RelationReport> relation_suite(int workers) {
  named("m");  // build the catalog before fanning out
  auto rels = relations();
  std::vector<RelationReport> out(rels.size());
  auto run = [&](size_t i) {
    try {
      auto [l, r] = rels[i].eval();
      out[i] = compare(rels[i].name, rels[i].lhs_desc, l, rels[i].rhs_desc, r);
    } catch (const std::exception& e) {
      out[i] = RelationReport{rels[i].name, rels[i].lhs_desc, rels[i].rhs_desc, false, e.what()};
    }
  };
  if (workers <= 1) {
    for (size_t i = 0; i < rels.size(); ++i) run(i);
  } else {
    std::vector<std::future<void>> fs;
    for (size_t start = 0; start < size_t(workers); ++start)
      fs.push_back(std::async(std::launch::async, [&, start] {
        for (size_t i = start; i < rels.size(); i += size_t(workers)) run(i);
      }));
    for (auto& f : fs) f.get();
  }
  return out;
}

std::string relation_suite_json(const std::vector<RelationReport>& reps) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reps)
    arr.push_back({{"name", r.name},
                   {"status", r.pass ? "pass" : "fail"},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"witness", r.witness}});
  return arr.dump(2);
}

std::string relation_suite_table(const std::vector<RelationReport>& reps) {
  std::ostringstream os;
  size_t w = 0;
  for (const auto& r : reps) w = std::max(w, r.name.size());
  for (const auto& r : reps) {
    os << (r.pass ? "PASS  " : "FAIL  ") << r.name << std::string(w - r.name.size() + 2, ' ') << r.lhs << " = "
       << r.rhs;
    if (!r.pass) os << "   [" << r.witness << "]";
    os << "\n";
  }
  return os.str();
}

BBIdempotents idempotents_BB() { return {named("e_first"), named("e_second")}; }

}  // namespace osb
