#pragma once

#include "oddsoergel/linalg.hpp"
#include "oddsoergel/skewpoly.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace osb {

// Matrix over a skew polynomial ring, row-major.
struct PMat {
  int rows = 0, cols = 0, n = 2;
  std::vector<SkewPoly> a;

  PMat() = default;
  PMat(int r, int c, int nv) : rows(r), cols(c), n(nv), a(size_t(r) * c, SkewPoly(nv)) {}
  static PMat identity(int k, int nv);
  static PMat scalar(const std::vector<std::vector<Q>>& m, int nv);

  SkewPoly& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const SkewPoly& at(int i, int j) const { return a[size_t(i) * cols + j]; }
  bool is_zero() const;
  bool operator==(const PMat& o) const;
  bool operator!=(const PMat& o) const { return !(*this == o); }
};

PMat operator*(const PMat& x, const PMat& y);
PMat operator+(const PMat& x, const PMat& y);
PMat operator-(const PMat& x, const PMat& y);
PMat operator*(const PMat& x, const Q& c);

enum class BaseTag { UnitR, UnitRs, Ind, Res, U, Us };
const char* base_tag_name(BaseTag t);

// How the right action of an arbitrary ring element is computed.
enum class ActKind {
  Generic,  // expand into generators
  Mult,     // rank one, b*c = c*b
  Twist     // rank one, b*c = s(c)*b
};

struct BimoduleObj {
  std::string name;
  Ring left = Ring::R, right = Ring::R;
  std::vector<std::string> labels;
  std::vector<int> degs;
  std::vector<PMat> rho;  // one matrix per generator of the right ring
  ActKind kind = ActKind::Generic;
  int twist = 1;       // transposition index for ActKind::Twist
  int decomp_var = 0;  // Res-type objects: left basis {1, x_v}
  int decomp_s = 1;
  // Set when this object is act_via (x) (rank one) with the same basis; the
  // right action is then that of act_via, twisted by s_{via_twist} if nonzero.
  std::shared_ptr<const BimoduleObj> act_via;
  int via_twist = 0;

  int rank() const { return int(degs.size()); }
  int nvars() const { return ring_nvars(left); }
  // Matrix of right multiplication by a right-ring element.
  PMat act(const SkewPoly& c) const;
  // Coordinates of the ring element f seen as an element of a base object.
  std::vector<SkewPoly> coords_of(const SkewPoly& f) const;
};

using Obj = std::shared_ptr<const BimoduleObj>;

Obj base(BaseTag t);
// Three-variable bases: Ind_i = _R R_{R^i}, Res_i = _{R^i} R_R, U_i twisted by s_i.
Obj base3_ind(int i);
Obj base3_res(int i);
Obj base3_unit();
Obj base3_u(int i);

Obj tensor(const Obj& m, const Obj& n);
Obj tensor_all(const std::vector<Obj>& fs);
Obj shift(const Obj& m, int k);
Obj direct_sum(const std::vector<Obj>& ms);
Obj renamed(const Obj& m, const std::string& name);
bool same_shape(const BimoduleObj& a, const BimoduleObj& b);

using Elem = std::vector<SkewPoly>;

// Pure tensor f1 (x) f2 (x) ... with one ring element per base factor.
Elem pure(const std::vector<Obj>& factors, const std::vector<SkewPoly>& slots);
// x (x) y for elements of M and N.
Elem tensor_elems(const Obj& m, const Elem& x, const Elem& y);
Elem elem_add(const Elem& x, const Elem& y);
Elem elem_scale(const SkewPoly& c, const Elem& x);

struct Morphism {
  Obj src, tgt;
  int degree = 0;
  PMat mat;

  Morphism() = default;
  Morphism(Obj s, Obj t, int d, PMat m)
      : src(std::move(s)), tgt(std::move(t)), degree(d), mat(std::move(m)) {}
  Morphism(Obj s, Obj t, int d);  // zero map
  bool is_zero() const { return mat.is_zero(); }
  Elem apply(const Elem& x) const;
};

Morphism identity(const Obj& m);
Morphism from_images(const Obj& src, const Obj& tgt, int degree, const std::vector<Elem>& images);
Morphism compose(const Morphism& first, const Morphism& then);  // then o first
Morphism tensor_morphisms(const Morphism& f, const Morphism& g);
Morphism operator+(const Morphism& f, const Morphism& g);
Morphism operator-(const Morphism& f, const Morphism& g);
Morphism operator*(const Q& c, const Morphism& f);
bool same_map(const Morphism& f, const Morphism& g);
// Reinterpret along shifts: a map M -> N of degree d as M{a} -> N{b}.
Morphism reshift(const Morphism& f, const Obj& src, const Obj& tgt);

struct VerifyReport {
  bool ok = true;
  std::string message;
  int generator = -1, row = -1, col = -1;
};
VerifyReport verify_morphism(const Morphism& f);

std::vector<Morphism> hom_basis(const Obj& m, const Obj& n, int d);
int hom_dim(const Obj& m, const Obj& n, int d);
// Lowest degree in which a nonzero map can exist.
int hom_min_degree(const Obj& m, const Obj& n);
std::map<int, int> graded_hom_series(const Obj& m, const Obj& n, int d_max, int workers = 1);

// Degree-0 part of a degree-0 map as a scalar matrix.
QMat scalar_part(const Morphism& f);
std::optional<Morphism> inverse_of(const Morphism& f);
struct Iso {
  Morphism fwd, inv;
};
std::optional<Iso> find_isomorphism(const Obj& m, const Obj& n);

struct Splitting {
  Obj summand;
  Morphism incl, proj;
};
Splitting split_idempotent(const Morphism& e, const std::string& name = "S");

}  // namespace osb
