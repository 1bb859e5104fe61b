#include "oddsoergel/threestrand.hpp"

#include "oddsoergel/linalg.hpp"

#include <json.hpp>

#include <algorithm>
#include <future>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace osb {

namespace {

constexpr int kN = 3;

SkewPoly mono3(Mono m) { return SkewPoly::mono(kN, m); }

// Solutions x of sum_i x_i * images[i] = 0, images given as sparse coordinate
// maps.
std::vector<std::vector<Q>> kernel_of(const std::vector<std::map<int, Q>>& images) {
  std::map<int, SparseRow> rows;
  for (size_t i = 0; i < images.size(); ++i)
    for (const auto& [k, q] : images[i]) rows[k].push_back({int(i), q});
  Echelon e(int(images.size()));
  for (auto& [k, r] : rows) e.insert(r);
  return e.nullspace();
}

int rank_of(const std::vector<std::map<int, Q>>& vecs, int ncols) {
  Echelon e(ncols);
  for (const auto& v : vecs) {
    SparseRow r(v.begin(), v.end());
    e.insert(std::move(r));
  }
  return e.rank();
}

std::map<int, Q> poly_coords(const SkewPoly& p) {
  std::map<int, Q> out;
  for (const auto& [m, q] : p.terms()) out[int(m.key)] = q;
  return out;
}

// Coordinates on the degree-d slice of a bimodule with a finite left basis.
class SliceIndex {
 public:
  SliceIndex(const Obj& m, int d) : m_(m), d_(d) {
    for (int b = 0; b < m->rank(); ++b) {
      int k2 = d - m->degs[b];
      if (k2 < 0 || k2 % 2) continue;
      for (Mono mo : monomials_of_total(kN, k2 / 2)) {
        index_[{b, mo.key}] = int(basis_.size());
        basis_.push_back({b, mo});
      }
    }
  }
  int size() const { return int(basis_.size()); }
  const std::vector<std::pair<int, Mono>>& basis() const { return basis_; }

  std::map<int, Q> coords(const Elem& x) const {
    std::map<int, Q> out;
    for (int b = 0; b < int(x.size()); ++b)
      for (const auto& [mo, q] : x[b].terms()) {
        auto it = index_.find({b, mo.key});
        if (it == index_.end()) throw std::logic_error("element outside the slice of " + m_->name);
        out[it->second] += q;
      }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
  }

 private:
  Obj m_;
  int d_;
  std::vector<std::pair<int, Mono>> basis_;
  std::map<std::pair<int, uint32_t>, int> index_;
};

Elem left_mul(const SkewPoly& a, const Elem& x) {
  Elem out;
  for (const auto& c : x) out.push_back(a * c);
  return out;
}

Elem right_mul(const Obj& m, const Elem& x, const PMat& act) {
  Elem out(m->rank(), SkewPoly(kN));
  for (int i = 0; i < m->rank(); ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < m->rank(); ++j)
      if (!act.at(i, j).is_zero()) out[j] += x[i] * act.at(i, j);
  }
  return out;
}

Obj word_piece(const std::string& w) {
  if (w == "B1" || w == "B2") {
    int i = w[1] - '0';
    return shift(tensor(base3_ind(i), base3_res(i)), -1);
  }
  if (w == "U1" || w == "U2") return base3_u(w[1] - '0');
  if (w == "R") return base3_unit();
  throw std::invalid_argument("unknown three-strand factor " + w);
}

}  // namespace

DegSlice invariant_slice(Which which, int d, bool second_first) {
  if (d % 2) throw std::invalid_argument("invariant_slice: odd degree");
  DegSlice out;
  out.degree = d;
  if (d < 0) return out;
  auto mons = monomials_of_total(kN, d / 2);
  std::vector<SkewPoly> cur;
  for (Mono m : mons) cur.push_back(mono3(m));
  std::vector<int> ops;
  if (which == Which::First) ops = {1};
  if (which == Which::Second) ops = {2};
  if (which == Which::Both) ops = second_first ? std::vector<int>{2, 1} : std::vector<int>{1, 2};
  for (int i : ops) {
    std::vector<std::map<int, Q>> imgs;
    for (const auto& p : cur) imgs.push_back(poly_coords(demazure(i, p)));
    std::vector<SkewPoly> next;
    for (const auto& v : kernel_of(imgs)) {
      SkewPoly p(kN);
      for (size_t j = 0; j < v.size(); ++j)
        if (v[j] != 0) p += cur[j] * v[j];
      next.push_back(p);
    }
    cur = next;
  }
  // canonical reduced echelon basis over the monomials
  std::map<uint32_t, int> col;
  for (Mono m : mons) col.emplace(m.key, int(col.size()));
  Echelon e(int(col.size()));
  for (const auto& p : cur) {
    SparseRow r;
    for (const auto& [m, q] : p.terms()) r.push_back({col.at(m.key), q});
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    e.insert(r);
  }
  e.make_reduced();
  for (const auto& [lead, row] : e.pivots()) {
    SkewPoly p(kN);
    for (const auto& [c, q] : row) p += mono3(mons[c]) * q;
    out.basis.push_back(p);
  }
  return out;
}

Obj three_word(const std::vector<std::string>& word) {
  static std::mutex mu;
  static std::map<std::vector<std::string>, Obj> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(word);
  if (it != cache.end()) return it->second;
  if (word.empty()) throw std::invalid_argument("three_word: empty word");
  Obj o = word_piece(word[0]);
  for (size_t i = 1; i < word.size(); ++i) o = tensor(o, word_piece(word[i]));
  cache.emplace(word, o);
  return o;
}

int slice_dim(const Obj& m, int d) {
  int n = 0;
  for (int b = 0; b < m->rank(); ++b) {
    int k2 = d - m->degs[b];
    if (k2 >= 0 && k2 % 2 == 0) n += int(monomials_of_total(m->nvars(), k2 / 2).size());
  }
  return n;
}

int bimodule_slice(const std::vector<std::string>& word, int d) { return slice_dim(three_word(word), d); }

namespace {

// Pure tensors a (x) b of monomials with |a| + |b| = k, indexed.
struct PairIndex {
  std::vector<std::pair<Mono, Mono>> pairs;
  std::map<std::pair<uint32_t, uint32_t>, int> index;
  explicit PairIndex(int k) {
    for (int i = 0; i <= k; ++i)
      for (Mono a : monomials_of_total(kN, i))
        for (Mono b : monomials_of_total(kN, k - i)) {
          index[{a.key, b.key}] = int(pairs.size());
          pairs.push_back({a, b});
        }
  }
};

std::vector<std::vector<DegSlice>> invariant_table(int k_max) {
  std::vector<std::vector<DegSlice>> t;
  for (int e = 0; e <= k_max; ++e) t.push_back({invariant_slice(Which::Both, 2 * e)});
  return t;
}

// dim of R3 (x)_{R^[2]} R3 in tensor degree 2k (module degree 2k - 3).
int hat_dim_at(int k, const std::vector<std::vector<DegSlice>>& inv) {
  PairIndex pi(k);
  Echelon e(int(pi.pairs.size()));
  for (int f_deg = 1; f_deg <= k; ++f_deg)
    for (const auto& f : inv[f_deg][0].basis)
      for (int i = 0; i <= k - f_deg; ++i)
        for (Mono a : monomials_of_total(kN, i))
          for (Mono b : monomials_of_total(kN, k - f_deg - i)) {
            std::map<int, Q> row;
            SkewPoly af = mono3(a) * f, fb = f * mono3(b);
            for (const auto& [m, q] : af.terms()) row[pi.index.at({m.key, b.key})] += q;
            for (const auto& [m, q] : fb.terms()) row[pi.index.at({a.key, m.key})] -= q;
            SparseRow r;
            for (auto& [c, q] : row)
              if (q != 0) r.push_back({c, q});
            if (!r.empty()) e.insert(std::move(r));
          }
  return int(pi.pairs.size()) - e.rank();
}

template <class F>
std::vector<int> map_degrees(const std::vector<int>& ks, int workers, F fn) {
  std::vector<int> out(ks.size());
  if (workers < 1) workers = 1;
  for (size_t start = 0; start < ks.size(); start += size_t(workers)) {
    std::vector<std::future<int>> fs;
    size_t stop = std::min(ks.size(), start + size_t(workers));
    for (size_t i = start; i < stop; ++i)
      fs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, fn, ks[i]));
    for (size_t i = start; i < stop; ++i) out[i] = fs[i - start].get();
  }
  return out;
}

}  // namespace

std::map<int, int> b121hat_dims(int d_max, int workers) {
  std::map<int, int> out;
  std::vector<int> ks;
  for (int d = -3; d <= d_max; d += 2) ks.push_back((d + 3) / 2);
  if (ks.empty()) return out;
  auto inv = invariant_table(ks.back());
  auto dims = map_degrees(ks, workers, [&](int k) { return hat_dim_at(k, inv); });
  for (size_t i = 0; i < ks.size(); ++i) out[2 * ks[i] - 3] = dims[i];
  return out;
}

ObstructionReport obstruction_report(int d_max, int workers) {
  ObstructionReport rep;
  rep.d_max = d_max;
  if (d_max < 8) {
    rep.sufficient_degree = false;
    rep.note = "d_max below 8 does not constrain the obstruction";
    return rep;
  }
  Obj triple = three_word({"B1", "B2", "B1"});
  Obj bbar = three_word({"B1", "U1"});
  int k_top = (d_max + 3) / 2;
  auto inv = invariant_table(k_top);

  // (i) degree-0 maps out of the cyclic bimodule: generator images v in
  // degree -3 commuting with every invariant of positive degree
  SliceIndex gen_slice(triple, -3);
  std::vector<Elem> gen_basis;
  for (const auto& [b, mo] : gen_slice.basis()) {
    Elem x(triple->rank(), SkewPoly(kN));
    x[b] = mono3(mo);
    gen_basis.push_back(x);
  }
  std::vector<std::map<int, Q>> constraint(gen_basis.size());
  int offset = 0;
  for (int e = 1; e <= k_top; ++e) {
    SliceIndex tgt(triple, -3 + 2 * e);
    for (const auto& f : inv[e][0].basis) {
      PMat act = triple->act(f);
      for (size_t g = 0; g < gen_basis.size(); ++g) {
        Elem diff = left_mul(f, gen_basis[g]);
        Elem vf = right_mul(triple, gen_basis[g], act);
        for (size_t b = 0; b < diff.size(); ++b) diff[b] -= vf[b];
        for (auto& [c, q] : tgt.coords(diff)) constraint[g][offset + c] = q;
      }
      offset += tgt.size();
    }
  }
  auto incl_space = kernel_of(constraint);
  rep.inclusion_dim = int(incl_space.size());
  if (rep.inclusion_dim != 1) {
    rep.note = "degree-0 Hom space from the cyclic bimodule has dimension " + std::to_string(rep.inclusion_dim);
    return rep;
  }
  Elem v(triple->rank(), SkewPoly(kN));
  for (size_t g = 0; g < gen_basis.size(); ++g)
    if (incl_space[0][g] != 0)
      for (size_t b = 0; b < v.size(); ++b) v[b] += gen_basis[g][b] * incl_space[0][g];
  if (!v[0].is_zero()) {
    Q lead = v[0].constant_term();
    if (lead != 0)
      for (auto& c : v) c = c * (Q(1) / lead);
  }

  // the quotient map: degree-0 maps to Bbar1 vanishing on v
  auto qs = hom_basis(triple, bbar, 0);
  std::vector<std::map<int, Q>> on_v;
  SliceIndex bb_gen(bbar, -3);
  for (const auto& p : qs) on_v.push_back(bb_gen.coords(p.apply(v)));
  auto pi_space = kernel_of(on_v);
  rep.quotient_dim = int(pi_space.size());
  if (rep.quotient_dim == 0) {
    rep.note = "no degree-0 map onto Bbar1 vanishes on the inclusion";
    return rep;
  }
  Morphism pi(triple, bbar, 0);
  for (size_t k = 0; k < qs.size(); ++k)
    if (pi_space[0][k] != 0) pi = pi + pi_space[0][k] * qs[k];

  // slices
  std::vector<int> degrees;
  for (int d = -3; d <= d_max; d += 2) degrees.push_back(d);
  std::vector<ObstructionRow> rows(degrees.size());
  auto slice_job = [&](size_t idx) {
    int d = degrees[idx];
    int k = (d + 3) / 2;
    ObstructionRow row{d, hat_dim_at(k, inv), slice_dim(triple, d), slice_dim(bbar, d), 0, 0};
    SliceIndex ts(triple, d), bs(bbar, d);
    std::map<uint32_t, PMat> right_acts;
    std::vector<std::map<int, Q>> imgs;
    PairIndex pairs(k);
    for (const auto& [a, b] : pairs.pairs) {
      auto it = right_acts.find(b.key);
      if (it == right_acts.end()) it = right_acts.emplace(b.key, triple->act(mono3(b))).first;
      imgs.push_back(ts.coords(right_mul(triple, left_mul(mono3(a), v), it->second)));
    }
    row.image_rank = rank_of(imgs, ts.size());
    std::vector<std::map<int, Q>> pimgs;
    for (const auto& [b, mo] : ts.basis()) {
      Elem x(triple->rank(), SkewPoly(kN));
      x[b] = mono3(mo);
      pimgs.push_back(bs.coords(pi.apply(x)));
    }
    row.quotient_rank = rank_of(pimgs, bs.size());
    rows[idx] = row;
  };
  {
    int w = std::max(1, workers);
    for (size_t start = 0; start < degrees.size(); start += size_t(w)) {
      std::vector<std::future<void>> fs;
      for (size_t i = start; i < std::min(degrees.size(), start + size_t(w)); ++i)
        fs.push_back(std::async(w > 1 ? std::launch::async : std::launch::deferred, slice_job, i));
      for (auto& f : fs) f.get();
    }
  }
  rep.rows = rows;
  rep.injective = true;
  rep.cokernel_match = true;
  rep.exact = true;
  rep.injective_upto = -4;
  for (const auto& r : rows) {
    if (r.image_rank != r.hat_dim) rep.injective = false;
    if (rep.injective) rep.injective_upto = r.degree;
    if (r.triple_dim - r.image_rank != r.bbar_dim) rep.cokernel_match = false;
    if (r.triple_dim - r.quotient_rank != r.image_rank || r.quotient_rank != r.bbar_dim) rep.exact = false;
  }
  if (rep.injective) rep.injective_upto = d_max;

  // (iii) sections of the quotient map
  auto sigmas = hom_basis(bbar, triple, 0);
  rep.section_candidates = int(sigmas.size());
  std::map<std::tuple<int, int, uint32_t>, int> key;
  std::vector<std::map<int, Q>> cols(sigmas.size());
  auto flat = [&](const PMat& m, std::map<int, Q>& out) {
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j)
        for (const auto& [mo, q] : m.at(i, j).terms()) {
          auto [it, fresh] = key.emplace(std::tuple{i, j, mo.key}, int(key.size()));
          out[it->second] += q;
        }
  };
  for (size_t s = 0; s < sigmas.size(); ++s) {
    Morphism ps = compose(sigmas[s], pi);
    flat(ps.mat, cols[s]);
  }
  std::map<int, Q> rhs;
  Morphism id = identity(bbar);
  flat(id.mat, rhs);
  QMat sys(key.size(), std::vector<Q>(sigmas.size()));
  std::vector<Q> b(key.size());
  for (size_t s = 0; s < sigmas.size(); ++s)
    for (auto& [r, q] : cols[s]) sys[r][s] = q;
  for (auto& [r, q] : rhs) b[r] = q;
  auto sol = sigmas.empty() ? std::nullopt : solve(sys, b);
  rep.split = sol.has_value();
  rep.section_dim = rep.split ? int(sigmas.size()) - rank(sys) : 0;
  return rep;
}

std::string obstruction_json(const ObstructionReport& r) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& x : r.rows)
    rows.push_back({{"degree", x.degree},
                    {"b121hat", x.hat_dim},
                    {"b1b2b1", x.triple_dim},
                    {"bbar1", x.bbar_dim},
                    {"image_rank", x.image_rank},
                    {"quotient_rank", x.quotient_rank}});
  json out = {{"max_degree", r.d_max},
              {"inclusion_dim", r.inclusion_dim},
              {"injective_upto", r.injective_upto},
              {"cokernel_match", r.cokernel_match},
              {"exact", r.exact},
              {"quotient_dim", r.quotient_dim},
              {"section_candidates", r.section_candidates},
              {"split", r.split},
              {"section_dim", r.section_dim},
              {"ok", r.ok()},
              {"slices", rows}};
  if (!r.note.empty()) out["note"] = r.note;
  return out.dump(2);
}

}  // namespace osb
