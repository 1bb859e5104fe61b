#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace osb {

using Q = mpq_class;

// Exponent vector x1^a x2^b x3^c packed into 10-bit fields; larger key means
// lexicographically larger exponent tuple.
struct Mono {
  uint32_t key = 0;

  static Mono of(int a, int b, int c = 0) {
    return Mono{(uint32_t(a) << 20) | (uint32_t(b) << 10) | uint32_t(c)};
  }
  int exp(int i) const { return int((key >> (10 * (2 - i))) & 0x3ff); }
  int total() const { return exp(0) + exp(1) + exp(2); }
  int degree() const { return 2 * total(); }
  bool operator==(const Mono& o) const { return key == o.key; }
  bool operator<(const Mono& o) const { return key < o.key; }
};

// Sign of x^a * x^b when brought to normal form.
int mono_mul_sign(Mono a, Mono b);
Mono mono_mul(Mono a, Mono b);

class SkewPoly {
 public:
  using Term = std::pair<Mono, Q>;

  explicit SkewPoly(int n = 2) : n_(n) {}

  static SkewPoly constant(int n, const Q& c);
  static SkewPoly var(int n, int i);
  static SkewPoly mono(int n, Mono m, const Q& c = 1);
  static SkewPoly from_terms(int n, std::vector<Term> terms);

  int nvars() const { return n_; }
  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }

  // Single degree of a nonzero homogeneous element; nullopt for zero or
  // inhomogeneous input.
  std::optional<int> homogeneous_degree() const;
  bool is_homogeneous_of(int d) const;
  Q coeff(Mono m) const;
  Q constant_term() const { return coeff(Mono{}); }
  SkewPoly part_of_degree(int d) const;

  SkewPoly operator+(const SkewPoly& o) const;
  SkewPoly operator-(const SkewPoly& o) const;
  SkewPoly operator-() const;
  SkewPoly operator*(const SkewPoly& o) const;
  SkewPoly operator*(const Q& c) const;
  SkewPoly& operator+=(const SkewPoly& o);
  SkewPoly& operator-=(const SkewPoly& o);
  bool operator==(const SkewPoly& o) const;
  bool operator!=(const SkewPoly& o) const { return !(*this == o); }

  std::string str() const;

 private:
  int n_;
  std::vector<Term> t_;  // sorted by descending key, no zero coefficients
  void check_same(const SkewPoly& o) const;
  friend SkewPoly mul(const SkewPoly&, const SkewPoly&);
};

SkewPoly mul(const SkewPoly& p, const SkewPoly& q);
SkewPoly pow(const SkewPoly& p, int k);

// Transposition s_i: x_i <-> x_{i+1} with a sign, fixing nothing else up to
// sign: s_i(x_j) = -x_{s_i(j)}.
SkewPoly act_s(int i, const SkewPoly& p);
SkewPoly demazure(int i, const SkewPoly& p);
bool is_invariant(int i, const SkewPoly& p);

// E1 = x1 - x2, E2 = x1 x2 in R = k<x1,x2>/(x1x2+x2x1).
SkewPoly E1();
SkewPoly E2();

class EExpr {
 public:
  std::map<std::pair<int, int>, Q> terms;  // (a,b) -> coeff of E1^a E2^b

  SkewPoly expand() const;
  bool operator==(const EExpr& o) const { return terms == o.terms; }
  std::string str() const;
};

// E1^a E2^b expanded in x1, x2.
SkewPoly e_monomial(int a, int b);
EExpr rs_normal_form(const SkewPoly& p);

struct Decomp {
  SkewPoly c0, c1;
};
// p = c0 + c1 * x_v with c0, c1 in ker d_i; v must be i or i+1.
Decomp left_decompose(const SkewPoly& p, int v, int i = 1);
// p = e0 + x_v * e1 with e0, e1 in ker d_i.
Decomp right_decompose(const SkewPoly& p, int v, int i = 1);

enum class Ring { R, Rs, R3, R3s1, R3s2 };

int ring_nvars(Ring r);
const char* ring_name(Ring r);
// Generators used for right actions: x1,x2 (R); E1,E2 (Rs); x1,x2,x3 (R3);
// a generating set of R^i for the three-variable invariant rings.
std::vector<SkewPoly> ring_generators(Ring r);
std::vector<SkewPoly> degree_slice(Ring r, int d);
std::vector<Mono> monomials_of_total(int n, int k);

SkewPoly parse_skewpoly(const std::string& s, int n = 2);
EExpr parse_eexpr(const std::string& s);
std::string q_str(const Q& q);

}  // namespace osb
