#include "oddsoergel/complexes.hpp"

#include "oddsoergel/calculus.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace osb {

namespace {

Obj base_of(const std::string& label) {
  if (label == "R") return objs::R();
  if (label == "U") return objs::U();
  if (label == "B") return objs::B();
  if (label == "Bbar") return objs::Bbar();
  throw std::invalid_argument("unknown label " + label);
}

std::string with_shift(const std::string& label, int k) { return label + "{" + std::to_string(k) + "}"; }

Morphism zero_map(const Obj& s, const Obj& t) { return Morphism(s, t, 0); }

std::optional<Q> identity_multiple(const Morphism& f) {
  if (f.src != f.tgt || f.degree != 0) return std::nullopt;
  if (f.src->rank() == 0) return std::nullopt;
  Q lambda = scalar_part(f)[0][0];
  if (!same_map(f, lambda * identity(f.src))) return std::nullopt;
  return lambda;
}

bool degrees_contain(const Obj& big, const Obj& small) {
  std::vector<int> a = big->degs, b = small->degs;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return std::includes(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

bool is_standard_label(const std::string& label) {
  return label == "R" || label == "U" || label == "B" || label == "Bbar";
}

Obj standard_object(const std::string& label, int shift_by) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, Obj> cache;
  std::lock_guard lock(mu);
  auto key = std::pair{label, shift_by};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Obj o = renamed(shift(base_of(label), shift_by), with_shift(label, shift_by));
  cache.emplace(key, o);
  return o;
}

std::string Summand::label() const {
  std::string s;
  for (size_t i = 0; i < word.size(); ++i) s += (i ? "*" : "") + word[i];
  return s;
}

Summand standard_summand(const std::string& label, int shift_by) {
  return Summand{{label}, shift_by, standard_object(label, shift_by)};
}

const std::vector<Summand>& Complex::at(int deg) const {
  static const std::vector<Summand> none;
  if (deg < lo || deg > hi()) return none;
  return terms[deg - lo];
}

int Complex::total_summands() const {
  int n = 0;
  for (const auto& t : terms) n += int(t.size());
  return n;
}

namespace {

// Sum over the middle term of d[k] followed by d[k+1], entry a -> c.
PMat composite_entry(const Complex& c, size_t k, size_t a, size_t e) {
  const Obj& s = c.terms[k][a].obj;
  const Obj& t = c.terms[k + 2][e].obj;
  PMat acc(s->rank(), t->rank(), s->nvars());
  for (size_t b = 0; b < c.terms[k + 1].size(); ++b) acc = acc + c.d[k][a][b].mat * c.d[k + 1][b][e].mat;
  return acc;
}

}  // namespace

bool d_squared_zero(const Complex& c) {
  for (size_t k = 0; k + 2 < c.terms.size(); ++k)
    for (size_t a = 0; a < c.terms[k].size(); ++a)
      for (size_t e = 0; e < c.terms[k + 2].size(); ++e)
        if (!composite_entry(c, k, a, e).is_zero()) return false;
  return true;
}

ComplexCheck check_complex(const Complex& c) {
  if (c.d.size() + 1 != c.terms.size() && !(c.terms.empty() && c.d.empty()))
    return {false, "differential count does not match terms"};
  for (size_t k = 0; k < c.d.size(); ++k) {
    if (c.d[k].size() != c.terms[k].size()) return {false, "differential rows at degree " + std::to_string(c.lo + k)};
    for (size_t a = 0; a < c.terms[k].size(); ++a) {
      if (c.d[k][a].size() != c.terms[k + 1].size())
        return {false, "differential columns at degree " + std::to_string(c.lo + k)};
      for (size_t b = 0; b < c.terms[k + 1].size(); ++b) {
        const Morphism& f = c.d[k][a][b];
        if (f.src != c.terms[k][a].obj || f.tgt != c.terms[k + 1][b].obj || f.degree != 0)
          return {false, "differential entry with wrong endpoints at degree " + std::to_string(c.lo + k)};
        auto rep = verify_morphism(f);
        if (!rep.ok) return {false, "differential entry is not a bimodule map: " + rep.message};
      }
    }
  }
  if (!d_squared_zero(c)) return {false, "d o d != 0"};
  return {};
}

Complex one_term(const Summand& s, int degree) {
  Complex c;
  c.lo = degree;
  c.terms = {{s}};
  return c;
}

Complex rouquier() {
  Complex c;
  c.lo = 0;
  Summand b = standard_summand("B", 0), r = standard_summand("R", -1);
  c.terms = {{b}, {r}};
  c.d = {{{reshift(named("m"), b.obj, r.obj)}}};
  return c;
}

Complex rouquier_inv() {
  Complex c;
  c.lo = -1;
  Summand r = standard_summand("R", 1), bb = standard_summand("Bbar", 0);
  c.terms = {{r}, {bb}};
  c.d = {{{reshift(named("delta_bar"), r.obj, bb.obj)}}};
  return c;
}

Complex tensor_complexes(const Complex& c, const Complex& e) {
  if (c.terms.empty() || e.terms.empty()) return Complex{};
  struct Src {
    int i, a, j, b;
  };
  Complex t;
  t.lo = c.lo + e.lo;
  int top = c.hi() + e.hi();
  std::vector<std::vector<Src>> index(top - t.lo + 1);
  t.terms.resize(index.size());
  for (int i = c.lo; i <= c.hi(); ++i)
    for (int j = e.lo; j <= e.hi(); ++j)
      for (int a = 0; a < int(c.at(i).size()); ++a)
        for (int b = 0; b < int(e.at(j).size()); ++b) {
          const Summand &x = c.at(i)[a], &y = e.at(j)[b];
          Summand s;
          s.word = x.word;
          s.word.insert(s.word.end(), y.word.begin(), y.word.end());
          s.shift = x.shift + y.shift;
          s.obj = tensor(x.obj, y.obj);
          index[i + j - t.lo].push_back({i, a, j, b});
          t.terms[i + j - t.lo].push_back(s);
        }
  t.d.resize(t.terms.size() - 1);
  for (size_t k = 0; k + 1 < t.terms.size(); ++k) {
    auto& dk = t.d[k];
    dk.resize(t.terms[k].size());
    for (size_t p = 0; p < t.terms[k].size(); ++p) {
      const Src& s = index[k][p];
      for (size_t q = 0; q < t.terms[k + 1].size(); ++q) {
        const Src& r = index[k + 1][q];
        const Obj &so = t.terms[k][p].obj, &to = t.terms[k + 1][q].obj;
        if (r.i == s.i + 1 && r.j == s.j && r.b == s.b) {
          const Morphism& f = c.d[s.i - c.lo][s.a][r.a];
          dk[p].push_back(Morphism(so, to, 0, tensor_morphisms(f, identity(e.at(s.j)[s.b].obj)).mat));
        } else if (r.j == s.j + 1 && r.i == s.i && r.a == s.a) {
          const Morphism& g = e.d[s.j - e.lo][s.b][r.b];
          Morphism h = tensor_morphisms(identity(c.at(s.i)[s.a].obj), g);
          if (s.i % 2) h = Q(-1) * h;
          dk[p].push_back(Morphism(so, to, 0, h.mat));
        } else {
          dk[p].push_back(zero_map(so, to));
        }
      }
    }
  }
  return t;
}

std::vector<Piece> decompose(const Obj& m) {
  static std::mutex mu;
  static std::map<std::string, std::vector<Piece>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(m->name);
    if (it != cache.end() && same_shape(*it->second.front().incl.tgt, *m)) {
      std::vector<Piece> out = it->second;
      for (auto& p : out) {
        p.incl = Morphism(p.incl.src, m, 0, p.incl.mat);
        p.proj = Morphism(m, p.proj.tgt, 0, p.proj.mat);
      }
      return out;
    }
  }
  std::vector<Piece> out;
  Obj cur = m;
  Morphism into_m = identity(m), from_m = identity(m);
  int step = 0;
  while (cur->rank() > 0) {
    bool found = false;
    int lo = *std::min_element(cur->degs.begin(), cur->degs.end());
    int hi = *std::max_element(cur->degs.begin(), cur->degs.end());
    for (const char* label : {"B", "Bbar", "R", "U"}) {
      for (int k = lo - 2; k <= hi + 2 && !found; ++k) {
        Obj s = standard_object(label, k);
        if (s->rank() > cur->rank() || !degrees_contain(cur, s)) continue;
        auto ins = hom_basis(s, cur, 0);
        if (ins.empty()) continue;
        auto outs = hom_basis(cur, s, 0);
        for (size_t a = 0; a < ins.size() && !found; ++a)
          for (size_t b = 0; b < outs.size() && !found; ++b) {
            auto lambda = identity_multiple(compose(ins[a], outs[b]));
            if (!lambda || *lambda == 0) continue;
            Morphism i = ins[a], p = Q(1) / *lambda * outs[b];
            out.push_back(Piece{Summand{{label}, k, s}, compose(i, into_m), compose(from_m, p)});
            if (s->rank() == cur->rank()) {
              cur = std::make_shared<BimoduleObj>();
              found = true;
              break;
            }
            Morphism e = identity(cur) - compose(p, i);
            Splitting sp = split_idempotent(e, m->name + "/c" + std::to_string(++step));
            into_m = compose(sp.incl, into_m);
            from_m = compose(from_m, sp.proj);
            cur = sp.summand;
            found = true;
          }
      }
      if (found) break;
    }
    if (!found) throw std::runtime_error("decompose: no standard summand found in " + m->name);
  }
  std::lock_guard lock(mu);
  if (!out.empty()) cache.emplace(m->name, out);
  return out;
}

Complex normalize(const Complex& c) {
  Complex n;
  n.lo = c.lo;
  std::vector<std::vector<std::pair<int, Piece>>> pieces(c.terms.size());
  for (size_t k = 0; k < c.terms.size(); ++k)
    for (int a = 0; a < int(c.terms[k].size()); ++a) {
      const Summand& s = c.terms[k][a];
      if (s.standard() && s.obj == standard_object(s.word[0], s.shift)) {
        pieces[k].push_back({a, Piece{s, identity(s.obj), identity(s.obj)}});
        continue;
      }
      for (auto& p : decompose(s.obj)) pieces[k].push_back({a, p});
    }
  n.terms.resize(c.terms.size());
  for (size_t k = 0; k < c.terms.size(); ++k)
    for (auto& [a, p] : pieces[k]) n.terms[k].push_back(p.summand);
  n.d.resize(c.d.size());
  for (size_t k = 0; k < c.d.size(); ++k)
    for (auto& [a, p] : pieces[k]) {
      std::vector<Morphism> row;
      for (auto& [b, q] : pieces[k + 1]) row.push_back(compose(compose(p.incl, c.d[k][a][b]), q.proj));
      n.d[k].push_back(std::move(row));
    }
  return n;
}

namespace {

void trim(Complex& c) {
  while (!c.terms.empty() && c.terms.front().empty()) {
    c.terms.erase(c.terms.begin());
    if (!c.d.empty()) c.d.erase(c.d.begin());
    ++c.lo;
  }
  while (!c.terms.empty() && c.terms.back().empty()) {
    c.terms.pop_back();
    if (!c.d.empty()) c.d.pop_back();
  }
}

std::optional<Q> pivot_scalar(const Complex& c, size_t k, size_t a, size_t b) {
  const Summand &x = c.terms[k][a], &y = c.terms[k + 1][b];
  if (!x.standard() || !y.standard() || x.word != y.word || x.shift != y.shift || x.obj != y.obj) return std::nullopt;
  auto lambda = identity_multiple(c.d[k][a][b]);
  if (!lambda || *lambda == 0) return std::nullopt;
  return lambda;
}

}  // namespace

Complex gaussian_eliminate(const Complex& c, int degree, int a, int b) {
  int k = degree - c.lo;
  if (k < 0 || k + 1 >= int(c.terms.size()) || a < 0 || a >= int(c.terms[k].size()) || b < 0 ||
      b >= int(c.terms[k + 1].size()))
    throw std::invalid_argument("gaussian_eliminate: position out of range");
  auto lambda = pivot_scalar(c, k, a, b);
  if (!lambda) throw std::invalid_argument("gaussian_eliminate: entry is not an invertible multiple of the identity");
  Q inv = Q(1) / *lambda;
  Complex n = c;
  const auto& dk = c.d[k];
  for (size_t x = 0; x < dk.size(); ++x)
    for (size_t y = 0; y < dk[x].size(); ++y)
      if (int(x) != a && int(y) != b) n.d[k][x][y] = dk[x][y] - inv * compose(dk[x][b], dk[a][y]);
  n.d[k].erase(n.d[k].begin() + a);
  for (auto& row : n.d[k]) row.erase(row.begin() + b);
  if (k > 0)
    for (auto& row : n.d[k - 1]) row.erase(row.begin() + a);
  if (k + 1 < int(n.d.size())) n.d[k + 1].erase(n.d[k + 1].begin() + b);
  n.terms[k].erase(n.terms[k].begin() + a);
  n.terms[k + 1].erase(n.terms[k + 1].begin() + b);
  trim(n);
  return n;
}

Complex reduce(const Complex& c, ReductionTrace* trace) {
  Complex cur = normalize(c);
  if (trace && !d_squared_zero(cur)) trace->d2_every_step = false;
  for (;;) {
    bool done = true;
    for (size_t k = 0; k + 1 < cur.terms.size() && done; ++k)
      for (size_t a = 0; a < cur.terms[k].size() && done; ++a)
        for (size_t b = 0; b < cur.terms[k + 1].size() && done; ++b) {
          auto lambda = pivot_scalar(cur, k, a, b);
          if (!lambda) continue;
          const Summand& s = cur.terms[k][a];
          if (trace) trace->steps.push_back({cur.lo + int(k), s.word[0], s.shift, *lambda});
          cur = gaussian_eliminate(cur, cur.lo + int(k), int(a), int(b));
          if (trace && !d_squared_zero(cur)) trace->d2_every_step = false;
          done = false;
        }
    if (done) return cur;
  }
}

Complex rouquier_power(int n, bool inverse, std::vector<ReductionTrace>* traces) {
  if (n < 1) throw std::invalid_argument("rouquier_power: n must be positive");
  Complex factor = inverse ? rouquier_inv() : rouquier();
  Complex cur = factor;
  for (int i = 2; i <= n; ++i) {
    ReductionTrace t;
    cur = reduce(tensor_complexes(cur, factor), &t);
    if (traces) traces->push_back(std::move(t));
  }
  return cur;
}

Shape expected_rouquier_shape(int n, bool inverse) {
  Shape s;
  if (!inverse) {
    for (int k = 0; k < n; ++k) s.push_back({k, (n - 1 - k) % 2 ? "Bbar" : "B", n - 1 - 2 * k});
    s.push_back({n, "R", -n});
  } else {
    s.push_back({-n, "R", n});
    for (int m = 1; m <= n; ++m) s.push_back({m - n, m % 2 ? "Bbar" : "B", n + 1 - 2 * m});
  }
  return s;
}

Shape shape_of(const Complex& c) {
  Shape s;
  for (int deg = c.lo; deg <= c.hi(); ++deg)
    for (const auto& x : c.at(deg)) s.push_back({deg, x.label(), x.shift});
  return s;
}

std::string shape_str(const Shape& s) {
  std::ostringstream os;
  for (size_t i = 0; i < s.size(); ++i)
    os << (i ? ", " : "") << "(" << s[i].degree << ", " << s[i].label << ", " << s[i].shift << ")";
  return os.str();
}

namespace {

// (1 (x) 1) * r in B or Bbar for the two-element left basis.
Elem right_mul(const Obj& o, const Elem& v, const SkewPoly& r) {
  PMat a = o->act(r);
  Elem out(o->rank(), SkewPoly(o->nvars()));
  for (int i = 0; i < o->rank(); ++i)
    for (int j = 0; j < o->rank(); ++j)
      if (!v[i].is_zero()) out[j] += v[i] * a.at(i, j);
  return out;
}

// Map out of B{k} or Bbar{k} determined by the image of the generator.
Morphism from_generator(const Obj& src, const Obj& tgt, const Elem& img) {
  std::vector<Elem> images(src->rank());
  Elem unit(src->rank(), SkewPoly(src->nvars()));
  unit[0] = SkewPoly::constant(2, 1);
  images[0] = img;
  for (int i = 1; i <= 2; ++i) {
    SkewPoly xi = SkewPoly::var(2, i);
    Elem e = right_mul(src, unit, xi);
    Elem basis1(src->rank(), SkewPoly(2));
    basis1[1] = SkewPoly::constant(2, 1);
    if (e == basis1) {
      images[1] = right_mul(tgt, img, xi);
      return from_images(src, tgt, 0, images);
    }
  }
  throw std::logic_error("from_generator: basis is not generated by 1 (x) 1");
}

std::optional<Q> proportional(const PMat& f, const PMat& g) {
  if (f.rows != g.rows || f.cols != g.cols || g.is_zero()) return std::nullopt;
  for (size_t i = 0; i < g.a.size(); ++i)
    if (!g.a[i].is_zero()) {
      const auto& gt = *g.a[i].terms().begin();
      Q lambda = f.a[i].coeff(gt.first) / gt.second;
      if (lambda == 0 || f != g * lambda) return std::nullopt;
      return lambda;
    }
  return std::nullopt;
}

}  // namespace

bool generator_images_ok(const Complex& c, std::string* why) {
  SkewPoly one = SkewPoly::constant(2, 1), x1 = SkewPoly::var(2, 1), x2 = SkewPoly::var(2, 2);
  std::vector<Obj> b = {base(BaseTag::Ind), base(BaseTag::Res)};
  std::vector<Obj> bb = {base(BaseTag::Ind), base(BaseTag::Us), base(BaseTag::Res)};
  int checked = 0;
  for (size_t k = 0; k + 1 < c.terms.size(); ++k)
    for (size_t a = 0; a < c.terms[k].size(); ++a)
      for (size_t e = 0; e < c.terms[k + 1].size(); ++e) {
        const Summand &s = c.terms[k][a], &t = c.terms[k + 1][e];
        if (!s.standard() || !t.standard()) continue;
        Elem img;
        if (s.word[0] == "B" && t.word[0] == "Bbar")
          img = elem_add(pure(bb, {one, one, x1}), pure(bb, {x2, one, one}));
        else if (s.word[0] == "Bbar" && t.word[0] == "B")
          img = elem_add(pure(b, {one, x2}), elem_scale(SkewPoly::constant(2, -1), pure(b, {x2, one})));
        else
          continue;
        Morphism expect = from_generator(s.obj, t.obj, img);
        if (!verify_morphism(expect).ok || !proportional(c.d[k][a][e].mat, expect.mat)) {
          if (why)
            *why = "differential " + s.obj->name + " -> " + t.obj->name + " at degree " +
                   std::to_string(c.lo + int(k)) + " is not a multiple of the stated map";
          return false;
        }
        ++checked;
      }
  if (checked == 0 && why) *why = "no B/Bbar differential present";
  return checked > 0;
}

ShapeReport matches_shape(const Complex& c, const Shape& s, bool check_generators) {
  ShapeReport r;
  Shape have = shape_of(c);
  auto key = [](const ShapeEntry& e) { return std::tuple{e.degree, e.label, e.shift}; };
  std::vector<std::tuple<int, std::string, int>> hk, sk;
  for (auto& e : have) hk.push_back(key(e));
  for (auto& e : s) sk.push_back(key(e));
  std::sort(hk.begin(), hk.end());
  std::sort(sk.begin(), sk.end());
  if (hk != sk) return {false, "shape " + shape_str(have) + " vs expected " + shape_str(s)};
  for (int deg = c.lo; deg <= c.hi(); ++deg)
    for (const auto& x : c.at(deg)) {
      if (!x.standard()) return {false, "non-standard summand " + x.label()};
      if (!find_isomorphism(x.obj, standard_object(x.word[0], x.shift)))
        return {false, "summand " + x.obj->name + " is not isomorphic to its label"};
    }
  if (check_generators) {
    std::string why;
    if (!generator_images_ok(c, &why)) return {false, why};
  }
  return r;
}

std::string complex_json(const Complex& c, const ReductionTrace* trace) {
  using nlohmann::json;
  json terms = json::array();
  for (int deg = c.lo; deg <= c.hi(); ++deg) {
    json summands = json::array();
    for (const auto& s : c.at(deg)) summands.push_back({{"label", s.label()}, {"shift", s.shift}});
    terms.push_back({{"degree", deg}, {"summands", summands}});
  }
  json diffs = json::array();
  for (size_t k = 0; k < c.d.size(); ++k) {
    json blocks = json::array();
    for (size_t a = 0; a < c.d[k].size(); ++a)
      for (size_t b = 0; b < c.d[k][a].size(); ++b) {
        const Morphism& f = c.d[k][a][b];
        if (f.is_zero()) continue;
        json m = json::array();
        for (int i = 0; i < f.mat.rows; ++i) {
          json row = json::array();
          for (int j = 0; j < f.mat.cols; ++j) row.push_back(f.mat.at(i, j).str());
          m.push_back(row);
        }
        blocks.push_back({{"from", a}, {"to", b}, {"matrix", m}});
      }
    diffs.push_back({{"degree", c.lo + int(k)}, {"blocks", blocks}});
  }
  json out = {{"lo", c.lo}, {"terms", terms}, {"differentials", diffs}};
  if (trace) {
    json steps = json::array();
    for (const auto& e : trace->steps)
      steps.push_back({{"degree", e.degree}, {"label", e.label}, {"shift", e.shift}, {"lambda", e.lambda.get_str()}});
    out["trace"] = {{"eliminated", steps}, {"d2_every_step", trace->d2_every_step}};
  }
  return out.dump(2);
}

}  // namespace osb
