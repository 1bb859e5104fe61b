#include "oddsoergel/bimod.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>

namespace osb {

PMat PMat::identity(int k, int nv) {
  PMat m(k, k, nv);
  for (int i = 0; i < k; ++i) m.at(i, i) = SkewPoly::constant(nv, 1);
  return m;
}

PMat PMat::scalar(const std::vector<std::vector<Q>>& s, int nv) {
  int r = int(s.size()), c = r ? int(s[0].size()) : 0;
  PMat m(r, c, nv);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = SkewPoly::constant(nv, s[i][j]);
  return m;
}

bool PMat::is_zero() const {
  for (const auto& p : a)
    if (!p.is_zero()) return false;
  return true;
}

bool PMat::operator==(const PMat& o) const {
  return rows == o.rows && cols == o.cols && a == o.a;
}

PMat operator*(const PMat& x, const PMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix product shape mismatch");
  PMat r(x.rows, y.cols, x.n);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const SkewPoly& xik = x.at(i, k);
      if (xik.is_zero()) continue;
      for (int j = 0; j < y.cols; ++j) {
        const SkewPoly& ykj = y.at(k, j);
        if (!ykj.is_zero()) r.at(i, j) += xik * ykj;
      }
    }
  return r;
}

PMat operator+(const PMat& x, const PMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix sum shape mismatch");
  PMat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

PMat operator-(const PMat& x, const PMat& y) { return x + y * Q(-1); }

PMat operator*(const PMat& x, const Q& c) {
  PMat r = x;
  for (auto& p : r.a) p = p * c;
  return r;
}

const char* base_tag_name(BaseTag t) {
  switch (t) {
    case BaseTag::UnitR: return "R";
    case BaseTag::UnitRs: return "Rs";
    case BaseTag::Ind: return "Ind";
    case BaseTag::Res: return "Res";
    case BaseTag::U: return "U";
    case BaseTag::Us: return "Us";
  }
  return "?";
}

PMat BimoduleObj::act(const SkewPoly& c) const {
  int nv = nvars();
  if (kind == ActKind::Mult) {
    PMat m(1, 1, nv);
    m.at(0, 0) = c;
    return m;
  }
  if (kind == ActKind::Twist) {
    PMat m(1, 1, nv);
    m.at(0, 0) = act_s(twist, c);
    return m;
  }
  if (act_via) return act_via->act(via_twist ? act_s(via_twist, c) : c);
  int r = rank();
  PMat out(r, r, nv);
  std::vector<std::vector<PMat>> pw(rho.size());
  auto power = [&](size_t g, int k) -> const PMat& {
    auto& v = pw[g];
    if (v.empty()) v.push_back(PMat::identity(r, nv));
    while (int(v.size()) <= k) v.push_back(v.back() * rho[g]);
    return v[k];
  };
  auto add_scaled = [&](const PMat& m, const Q& q) {
    for (size_t i = 0; i < out.a.size(); ++i)
      if (!m.a[i].is_zero()) out.a[i] += m.a[i] * q;
  };
  if (right == Ring::Rs) {
    EExpr nf = rs_normal_form(c);
    for (const auto& [ab, q] : nf.terms) add_scaled(power(0, ab.first) * power(1, ab.second), q);
  } else if (right == Ring::R || right == Ring::R3) {
    for (const auto& [m, q] : c.terms()) {
      PMat p = power(0, m.exp(0));
      if (m.exp(1)) p = p * power(1, m.exp(1));
      if (m.exp(2)) p = p * power(2, m.exp(2));
      add_scaled(p, q);
    }
  } else {
    throw std::invalid_argument("right action by this ring needs a rank one object");
  }
  return out;
}

std::vector<SkewPoly> BimoduleObj::coords_of(const SkewPoly& f) const {
  if (rank() == 1) return {f};
  if (decomp_var > 0) {
    Decomp d = left_decompose(f, decomp_var, decomp_s);
    return {d.c0, d.c1};
  }
  throw std::invalid_argument("coords_of needs a base object");
}

namespace {

PMat one_by_one(const SkewPoly& p) {
  PMat m(1, 1, p.nvars());
  m.at(0, 0) = p;
  return m;
}

std::shared_ptr<BimoduleObj> rank_one(const std::string& name, Ring l, Ring r, ActKind k, int tw) {
  auto o = std::make_shared<BimoduleObj>();
  o->name = name;
  o->left = l;
  o->right = r;
  o->labels = {"1"};
  o->degs = {0};
  o->kind = k;
  o->twist = tw;
  for (const auto& g : ring_generators(r)) {
    SkewPoly img = k == ActKind::Twist ? act_s(tw, g) : g;
    o->rho.push_back(one_by_one(img));
  }
  return o;
}

std::shared_ptr<BimoduleObj> restriction(const std::string& name, Ring l, Ring r, int v, int s) {
  auto o = std::make_shared<BimoduleObj>();
  int nv = ring_nvars(r);
  o->name = name;
  o->left = l;
  o->right = r;
  o->labels = {"1", "x" + std::to_string(v)};
  o->degs = {0, 2};
  o->decomp_var = v;
  o->decomp_s = s;
  SkewPoly xv = SkewPoly::var(nv, v);
  std::vector<SkewPoly> basis = {SkewPoly::constant(nv, 1), xv};
  for (const auto& g : ring_generators(r)) {
    PMat m(2, 2, nv);
    for (int k = 0; k < 2; ++k) {
      Decomp d = left_decompose(basis[k] * g, v, s);
      m.at(k, 0) = d.c0;
      m.at(k, 1) = d.c1;
    }
    o->rho.push_back(m);
  }
  return o;
}

}  // namespace

Obj base(BaseTag t) {
  switch (t) {
    case BaseTag::UnitR: return rank_one("R", Ring::R, Ring::R, ActKind::Mult, 1);
    case BaseTag::UnitRs: return rank_one("Rs", Ring::Rs, Ring::Rs, ActKind::Mult, 1);
    case BaseTag::Ind: return rank_one("Ind", Ring::R, Ring::Rs, ActKind::Mult, 1);
    case BaseTag::Res: return restriction("Res", Ring::Rs, Ring::R, 1, 1);
    case BaseTag::U: return rank_one("U", Ring::R, Ring::R, ActKind::Twist, 1);
    case BaseTag::Us: return rank_one("Us", Ring::Rs, Ring::Rs, ActKind::Twist, 1);
  }
  throw std::invalid_argument("unknown base tag");
}

Obj base3_unit() { return rank_one("R3", Ring::R3, Ring::R3, ActKind::Mult, 1); }

Obj base3_ind(int i) {
  return rank_one("Ind" + std::to_string(i), Ring::R3, i == 1 ? Ring::R3s1 : Ring::R3s2, ActKind::Mult, 1);
}

Obj base3_res(int i) {
  return restriction("Res" + std::to_string(i), i == 1 ? Ring::R3s1 : Ring::R3s2, Ring::R3, i, i);
}

Obj base3_u(int i) { return rank_one("U" + std::to_string(i), Ring::R3, Ring::R3, ActKind::Twist, i); }

Obj tensor(const Obj& m, const Obj& n) {
  if (m->right != n->left) throw std::invalid_argument("tensor: ring mismatch");
  auto o = std::make_shared<BimoduleObj>();
  o->name = m->name + "*" + n->name;
  o->left = m->left;
  o->right = n->right;
  int ra = m->rank(), rb = n->rank(), nv = m->nvars();
  for (int a = 0; a < ra; ++a)
    for (int b = 0; b < rb; ++b) {
      o->labels.push_back(m->labels[a] + "|" + n->labels[b]);
      o->degs.push_back(m->degs[a] + n->degs[b]);
    }
  if (m->kind != ActKind::Generic && n->kind != ActKind::Generic) {
    if (m->kind == ActKind::Mult) {
      o->kind = n->kind;
      o->twist = n->twist;
    } else if (n->kind == ActKind::Mult) {
      o->kind = m->kind;
      o->twist = m->twist;
    } else if (m->twist == n->twist) {
      o->kind = ActKind::Mult;
    }
  }
  if (o->kind == ActKind::Generic && n->rank() == 1 && n->kind != ActKind::Generic) {
    o->act_via = m;
    o->via_twist = n->kind == ActKind::Twist ? n->twist : 0;
  }
  for (const auto& rn : n->rho) {
    PMat r(ra * rb, ra * rb, nv);
    for (int g = 0; g < rb; ++g)
      for (int d = 0; d < rb; ++d) {
        const SkewPoly& c = rn.at(g, d);
        if (c.is_zero()) continue;
        PMat a = m->act(c);
        for (int al = 0; al < ra; ++al)
          for (int be = 0; be < ra; ++be)
            if (!a.at(al, be).is_zero()) r.at(al * rb + g, be * rb + d) += a.at(al, be);
      }
    o->rho.push_back(std::move(r));
  }
  return o;
}

Obj tensor_all(const std::vector<Obj>& fs) {
  if (fs.empty()) throw std::invalid_argument("tensor_all: empty word");
  Obj o = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) o = tensor(o, fs[i]);
  return o;
}

Obj shift(const Obj& m, int k) {
  if (k == 0) return m;
  auto o = std::make_shared<BimoduleObj>(*m);
  for (auto& d : o->degs) d += k;
  o->name = m->name + "{" + std::to_string(k) + "}";
  return o;
}

Obj direct_sum(const std::vector<Obj>& ms) {
  if (ms.empty()) throw std::invalid_argument("direct_sum: empty");
  if (ms.size() == 1) return ms[0];
  auto o = std::make_shared<BimoduleObj>();
  o->left = ms[0]->left;
  o->right = ms[0]->right;
  int total = 0;
  for (const auto& m : ms) {
    if (m->left != o->left || m->right != o->right) throw std::invalid_argument("direct_sum: ring mismatch");
    o->name += (o->name.empty() ? "" : "+") + m->name;
    for (int i = 0; i < m->rank(); ++i) {
      o->labels.push_back(m->labels[i]);
      o->degs.push_back(m->degs[i]);
    }
    total += m->rank();
  }
  int nv = o->nvars();
  for (size_t g = 0; g < ms[0]->rho.size(); ++g) {
    PMat r(total, total, nv);
    int off = 0;
    for (const auto& m : ms) {
      for (int i = 0; i < m->rank(); ++i)
        for (int j = 0; j < m->rank(); ++j) r.at(off + i, off + j) = m->rho[g].at(i, j);
      off += m->rank();
    }
    o->rho.push_back(std::move(r));
  }
  return o;
}

Obj renamed(const Obj& m, const std::string& name) {
  auto o = std::make_shared<BimoduleObj>(*m);
  o->name = name;
  return o;
}

bool same_shape(const BimoduleObj& a, const BimoduleObj& b) {
  return a.left == b.left && a.right == b.right && a.degs == b.degs;
}

Elem tensor_elems(const Obj& m, const Elem& x, const Elem& y) {
  int ra = m->rank(), rb = int(y.size()), nv = m->nvars();
  if (int(x.size()) != ra) throw std::invalid_argument("tensor_elems: size mismatch");
  Elem out(size_t(ra) * rb, SkewPoly(nv));
  for (int g = 0; g < rb; ++g) {
    if (y[g].is_zero()) continue;
    PMat a = m->act(y[g]);
    for (int al = 0; al < ra; ++al) {
      if (x[al].is_zero()) continue;
      for (int be = 0; be < ra; ++be)
        if (!a.at(al, be).is_zero()) out[size_t(be) * rb + g] += x[al] * a.at(al, be);
    }
  }
  return out;
}

Elem pure(const std::vector<Obj>& factors, const std::vector<SkewPoly>& slots) {
  if (factors.size() != slots.size() || factors.empty()) throw std::invalid_argument("pure: slot count");
  Elem e = factors[0]->coords_of(slots[0]);
  Obj acc = factors[0];
  for (size_t k = 1; k < factors.size(); ++k) {
    e = tensor_elems(acc, e, factors[k]->coords_of(slots[k]));
    if (k + 1 < factors.size()) acc = tensor(acc, factors[k]);
  }
  return e;
}

Elem elem_add(const Elem& x, const Elem& y) {
  if (x.size() != y.size()) throw std::invalid_argument("elem_add: size mismatch");
  Elem r = x;
  for (size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

Elem elem_scale(const SkewPoly& c, const Elem& x) {
  Elem r = x;
  for (auto& p : r) p = c * p;
  return r;
}

Morphism::Morphism(Obj s, Obj t, int d) : src(std::move(s)), tgt(std::move(t)), degree(d) {
  mat = PMat(src->rank(), tgt->rank(), src->nvars());
}

Elem Morphism::apply(const Elem& x) const {
  if (int(x.size()) != src->rank()) throw std::invalid_argument("apply: size mismatch");
  Elem y(tgt->rank(), SkewPoly(src->nvars()));
  for (int a = 0; a < src->rank(); ++a) {
    if (x[a].is_zero()) continue;
    for (int b = 0; b < tgt->rank(); ++b)
      if (!mat.at(a, b).is_zero()) y[b] += x[a] * mat.at(a, b);
  }
  return y;
}

Morphism identity(const Obj& m) { return Morphism(m, m, 0, PMat::identity(m->rank(), m->nvars())); }

Morphism from_images(const Obj& src, const Obj& tgt, int degree, const std::vector<Elem>& images) {
  if (int(images.size()) != src->rank()) throw std::invalid_argument("from_images: image count");
  Morphism f(src, tgt, degree);
  for (int a = 0; a < src->rank(); ++a) {
    if (int(images[a].size()) != tgt->rank()) throw std::invalid_argument("from_images: image size");
    for (int b = 0; b < tgt->rank(); ++b) f.mat.at(a, b) = images[a][b];
  }
  return f;
}

Morphism compose(const Morphism& first, const Morphism& then) {
  if (!same_shape(*first.tgt, *then.src))
    throw std::invalid_argument("compose: " + first.tgt->name + " vs " + then.src->name);
  return Morphism(first.src, then.tgt, first.degree + then.degree, first.mat * then.mat);
}

Morphism tensor_morphisms(const Morphism& f, const Morphism& g) {
  Obj src = tensor(f.src, g.src), tgt = tensor(f.tgt, g.tgt);
  Morphism r(src, tgt, f.degree + g.degree);
  int rm = f.src->rank(), rm2 = f.tgt->rank(), rn = g.src->rank(), rn2 = g.tgt->rank();
  for (int ga = 0; ga < rn; ++ga)
    for (int de = 0; de < rn2; ++de) {
      const SkewPoly& c = g.mat.at(ga, de);
      if (c.is_zero()) continue;
      PMat fa = f.mat * f.tgt->act(c);
      for (int al = 0; al < rm; ++al)
        for (int ep = 0; ep < rm2; ++ep)
          if (!fa.at(al, ep).is_zero()) r.mat.at(al * rn + ga, ep * rn2 + de) += fa.at(al, ep);
    }
  return r;
}

Morphism operator+(const Morphism& f, const Morphism& g) {
  if (!same_shape(*f.src, *g.src) || !same_shape(*f.tgt, *g.tgt) || f.degree != g.degree)
    throw std::invalid_argument("morphism sum: mismatch");
  return Morphism(f.src, f.tgt, f.degree, f.mat + g.mat);
}

Morphism operator-(const Morphism& f, const Morphism& g) { return f + Q(-1) * g; }

Morphism operator*(const Q& c, const Morphism& f) { return Morphism(f.src, f.tgt, f.degree, f.mat * c); }

bool same_map(const Morphism& f, const Morphism& g) { return f.mat == g.mat; }

Morphism reshift(const Morphism& f, const Obj& src, const Obj& tgt) {
  if (src->rank() != f.src->rank() || tgt->rank() != f.tgt->rank()) throw std::invalid_argument("reshift: rank");
  int a = src->rank() ? src->degs[0] - f.src->degs[0] : 0;
  int b = tgt->rank() ? tgt->degs[0] - f.tgt->degs[0] : 0;
  return Morphism(src, tgt, f.degree + b - a, f.mat);
}

VerifyReport verify_morphism(const Morphism& f) {
  VerifyReport rep;
  const auto &s = *f.src, &t = *f.tgt;
  if (s.left != t.left || s.right != t.right) return {false, "ring mismatch"};
  if (f.mat.rows != s.rank() || f.mat.cols != t.rank()) return {false, "matrix shape"};
  for (int a = 0; a < s.rank(); ++a)
    for (int b = 0; b < t.rank(); ++b)
      if (!f.mat.at(a, b).is_homogeneous_of(f.degree + s.degs[a] - t.degs[b]))
        return {false, "entry not homogeneous of the required degree", -1, a, b};
  for (size_t g = 0; g < s.rho.size(); ++g) {
    PMat lhs = s.rho[g] * f.mat, rhs = f.mat * t.rho[g];
    for (int a = 0; a < lhs.rows; ++a)
      for (int b = 0; b < lhs.cols; ++b)
        if (lhs.at(a, b) != rhs.at(a, b))
          return {false, "intertwining fails: " + lhs.at(a, b).str() + " vs " + rhs.at(a, b).str(), int(g), a, b};
  }
  return rep;
}

namespace {

std::vector<SkewPoly> left_slice(Ring l, int e) {
  if (e < 0 || e % 2 != 0) return {};
  return degree_slice(l, e);
}

}  // namespace

int hom_min_degree(const Obj& m, const Obj& n) {
  int best = 0;
  bool first = true;
  for (int a : m->degs)
    for (int b : n->degs) {
      int d = b - a;
      if (first || d < best) best = d;
      first = false;
    }
  return best;
}

std::vector<Morphism> hom_basis(const Obj& m, const Obj& n, int d) {
  if (m->left != n->left || m->right != n->right) throw std::invalid_argument("hom_basis: ring mismatch");
  struct Unknown {
    int a, b;
    SkewPoly p;
  };
  std::vector<Unknown> unk;
  for (int a = 0; a < m->rank(); ++a)
    for (int b = 0; b < n->rank(); ++b)
      for (auto& p : left_slice(m->left, d + m->degs[a] - n->degs[b])) unk.push_back({a, b, p});
  std::vector<Morphism> out;
  if (unk.empty()) return out;

  std::map<std::tuple<int, int, int, uint32_t>, std::map<int, Q>> rows;
  auto add = [&](int g, int r, int c, const SkewPoly& p, int col, const Q& sign) {
    for (const auto& [mono, q] : p.terms()) {
      Q& x = rows[{g, r, c, mono.key}][col];
      x += sign * q;
    }
  };
  for (size_t g = 0; g < m->rho.size(); ++g) {
    const PMat &rm = m->rho[g], &rn = n->rho[g];
    for (int u = 0; u < int(unk.size()); ++u) {
      const auto& [a, b, p] = unk[u];
      for (int a2 = 0; a2 < m->rank(); ++a2)
        if (!rm.at(a2, a).is_zero()) add(int(g), a2, b, rm.at(a2, a) * p, u, 1);
      for (int b2 = 0; b2 < n->rank(); ++b2)
        if (!rn.at(b, b2).is_zero()) add(int(g), a, b2, p * rn.at(b, b2), u, -1);
    }
  }
  Echelon ech(int(unk.size()));
  for (auto& [key, row] : rows) {
    SparseRow s;
    for (auto& [c, q] : row)
      if (q != 0) s.push_back({c, q});
    if (!s.empty()) ech.insert(std::move(s));
  }
  for (const auto& v : ech.nullspace()) {
    Morphism f(m, n, d);
    for (size_t u = 0; u < unk.size(); ++u)
      if (v[u] != 0) f.mat.at(unk[u].a, unk[u].b) += unk[u].p * v[u];
    out.push_back(std::move(f));
  }
  return out;
}

int hom_dim(const Obj& m, const Obj& n, int d) { return int(hom_basis(m, n, d).size()); }

std::map<int, int> graded_hom_series(const Obj& m, const Obj& n, int d_max, int workers) {
  std::map<int, int> out;
  int lo = hom_min_degree(m, n);
  std::vector<int> ds;
  for (int d = lo; d <= d_max; ++d) ds.push_back(d);
  if (workers < 1) workers = 1;
  for (size_t start = 0; start < ds.size(); start += size_t(workers)) {
    std::vector<std::future<int>> fs;
    size_t stop = std::min(ds.size(), start + size_t(workers));
    for (size_t i = start; i < stop; ++i)
      fs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                              [&, d = ds[i]] { return hom_dim(m, n, d); }));
    for (size_t i = start; i < stop; ++i) out[ds[i]] = fs[i - start].get();
  }
  return out;
}

QMat scalar_part(const Morphism& f) {
  QMat s(f.src->rank(), std::vector<Q>(f.tgt->rank()));
  for (int a = 0; a < f.src->rank(); ++a)
    for (int b = 0; b < f.tgt->rank(); ++b)
      if (f.degree + f.src->degs[a] - f.tgt->degs[b] == 0) s[a][b] = f.mat.at(a, b).constant_term();
  return s;
}

std::optional<Morphism> inverse_of(const Morphism& f) {
  if (f.degree != 0 || f.src->rank() != f.tgt->rank()) return std::nullopt;
  int r = f.src->rank(), nv = f.src->nvars();
  auto g0 = inverse(scalar_part(f));
  if (!g0) return std::nullopt;
  PMat G0 = PMat::scalar(*g0, nv);
  PMat plus = f.mat - PMat::scalar(scalar_part(f), nv);
  PMat nil = (G0 * plus) * Q(-1);
  PMat sum = PMat::identity(r, nv), term = sum;
  for (int k = 0; k <= r + 1; ++k) {
    term = term * nil;
    if (term.is_zero()) break;
    sum = sum + term;
  }
  Morphism inv(f.tgt, f.src, 0, sum * G0);
  if (f.mat * inv.mat != PMat::identity(r, nv) || inv.mat * f.mat != PMat::identity(r, nv)) return std::nullopt;
  return inv;
}

std::optional<Iso> find_isomorphism(const Obj& m, const Obj& n) {
  if (m->left != n->left || m->right != n->right || m->rank() != n->rank()) return std::nullopt;
  auto da = m->degs, db = n->degs;
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return std::nullopt;
  auto basis = hom_basis(m, n, 0);
  if (basis.empty()) return std::nullopt;
  std::mt19937 rng(20240917u);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int attempt = 0; attempt < 40; ++attempt) {
    Morphism f(m, n, 0);
    for (size_t i = 0; i < basis.size(); ++i) {
      int c = attempt == 0 ? (i == 0 ? 1 : 0) : coef(rng);
      if (c != 0) f = f + Q(c) * basis[i];
    }
    if (rank(scalar_part(f)) != m->rank()) continue;
    if (auto inv = inverse_of(f)) return Iso{f, *inv};
  }
  return std::nullopt;
}

namespace {

// Coefficients c_k of the prescribed degrees with sum_k c_k * rows[k] = target.
std::optional<std::vector<SkewPoly>> solve_combination(Ring l, const std::vector<int>& cdeg,
                                                       const std::vector<Elem>& rows, const Elem& target) {
  int nv = ring_nvars(l);
  struct Unknown {
    int k;
    SkewPoly p;
  };
  std::vector<Unknown> unk;
  for (int k = 0; k < int(rows.size()); ++k)
    for (auto& p : left_slice(l, cdeg[k])) unk.push_back({k, p});
  int nu = int(unk.size());
  std::map<std::pair<int, uint32_t>, std::map<int, Q>> eqs;
  for (int u = 0; u < nu; ++u)
    for (int b = 0; b < int(target.size()); ++b) {
      const SkewPoly& r = rows[unk[u].k][b];
      if (r.is_zero()) continue;
      SkewPoly pr = unk[u].p * r;
      for (const auto& [mono, q] : pr.terms()) eqs[{b, mono.key}][u] += q;
    }
  for (int b = 0; b < int(target.size()); ++b)
    for (const auto& [mono, q] : target[b].terms()) eqs[{b, mono.key}][nu] += q;
  Echelon ech(nu + 1);
  for (auto& [key, row] : eqs) {
    SparseRow s;
    for (auto& [c, q] : row)
      if (q != 0) s.push_back({c, q});
    if (!s.empty()) ech.insert(std::move(s));
  }
  ech.make_reduced();
  std::vector<SkewPoly> out(rows.size(), SkewPoly(nv));
  for (const auto& [c, r] : ech.pivots()) {
    if (c == nu) return std::nullopt;
    for (const auto& [k, a] : r)
      if (k == nu) out[unk[c].k] += unk[c].p * a;
  }
  return out;
}

}  // namespace

Splitting split_idempotent(const Morphism& e, const std::string& name) {
  const Obj& m = e.src;
  if (e.degree != 0 || !same_shape(*e.src, *e.tgt)) throw std::invalid_argument("split_idempotent: not an endomorphism");
  if (e.mat * e.mat != e.mat) throw std::invalid_argument("split_idempotent: not idempotent");
  int r = m->rank(), nv = m->nvars();
  QMat e0 = scalar_part(e);
  std::vector<int> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return m->degs[x] < m->degs[y]; });
  Echelon ech(r);
  std::vector<int> picked;
  for (int a : order) {
    SparseRow s;
    for (int j = 0; j < r; ++j)
      if (e0[a][j] != 0) s.push_back({j, e0[a][j]});
    if (ech.insert(std::move(s))) picked.push_back(a);
  }
  std::sort(picked.begin(), picked.end());
  int k = int(picked.size());
  auto s = std::make_shared<BimoduleObj>();
  s->name = name;
  s->left = m->left;
  s->right = m->right;
  PMat incl(k, r, nv);
  std::vector<Elem> rows;
  for (int i = 0; i < k; ++i) {
    s->labels.push_back("e(" + m->labels[picked[i]] + ")");
    s->degs.push_back(m->degs[picked[i]]);
    Elem row(r, SkewPoly(nv));
    for (int j = 0; j < r; ++j) row[j] = incl.at(i, j) = e.mat.at(picked[i], j);
    rows.push_back(row);
  }
  PMat proj(r, k, nv);
  for (int a = 0; a < r; ++a) {
    std::vector<int> cdeg(k);
    for (int i = 0; i < k; ++i) cdeg[i] = m->degs[a] - s->degs[i];
    Elem target(r, SkewPoly(nv));
    for (int j = 0; j < r; ++j) target[j] = e.mat.at(a, j);
    auto c = solve_combination(m->left, cdeg, rows, target);
    if (!c) throw std::runtime_error("split_idempotent: image is not spanned by the chosen rows");
    for (int i = 0; i < k; ++i) proj.at(a, i) = (*c)[i];
  }
  for (const auto& g : m->rho) s->rho.push_back(incl * g * proj);
  Obj so = s;
  Splitting sp{so, Morphism(so, m, 0, incl), Morphism(m, so, 0, proj)};
  if (incl * proj != PMat::identity(k, nv) || proj * incl != e.mat)
    throw std::runtime_error("split_idempotent: splitting check failed");
  return sp;
}

}  // namespace osb
