#pragma once

#include "oddsoergel/complexes.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace osb {

// Integer Laurent polynomial in q.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long long c) { add(0, c); }  // NOLINT: integers embed
  static LaurentPoly q(int e = 1, long long c = 1);

  const std::map<int, long long>& coeffs() const { return c_; }
  long long coeff(int e) const;
  bool is_zero() const { return c_.empty(); }
  void add(int e, long long v);

  LaurentPoly bar() const;  // q -> q^-1
  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }
  bool operator!=(const LaurentPoly& o) const { return c_ != o.c_; }
  std::string str() const;

 private:
  std::map<int, long long> c_;
};

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

// a1 + ab b + ac c + abc bc.
struct K0Elem {
  LaurentPoly a1, ab, ac, abc;

  static K0Elem one();
  static K0Elem b();
  static K0Elem c();
  static K0Elem bc();
  static K0Elem scalar(const LaurentPoly& p);

  bool operator==(const K0Elem& o) const { return a1 == o.a1 && ab == o.ab && ac == o.ac && abc == o.abc; }
  bool operator!=(const K0Elem& o) const { return !(*this == o); }
  bool is_zero() const { return a1.is_zero() && ab.is_zero() && ac.is_zero() && abc.is_zero(); }
  std::string str() const;
};

K0Elem operator+(const K0Elem& x, const K0Elem& y);
K0Elem operator-(const K0Elem& x, const K0Elem& y);
K0Elem operator*(const LaurentPoly& p, const K0Elem& x);
K0Elem k0_mul(const K0Elem& x, const K0Elem& y);
inline K0Elem operator*(const K0Elem& x, const K0Elem& y) { return k0_mul(x, y); }
K0Elem k0_tau(const K0Elem& x);

// numerator / (1 - q^4)^2
struct FormValue {
  LaurentPoly num;

  bool operator==(const FormValue& o) const { return num == o.num; }
  // Coefficients of the expansion for exponents <= cutoff.
  std::map<int, long long> series(int cutoff) const;
  std::string str() const;
};

FormValue form(const K0Elem& x, const K0Elem& y);
FormValue trace(const K0Elem& x);

// B -> b, U -> c, Bbar -> bc, R -> 1, shift {n} -> q^n.
K0Elem class_of(const Summand& s);
K0Elem class_of_label(const std::string& label);
// Alternating sum over cohomological degrees.
K0Elem euler_class(const Complex& c);

struct HomCheck {
  bool ok = true;
  std::vector<std::tuple<int, long long, int>> rows;  // degree, predicted, computed
  std::string message;
};
// Compares the series of form([x], [y]) with computed Hom dimensions.
HomCheck check_against_hom(const Summand& x, const Summand& y, int d_max, int workers = 1);
// Tensor word such as "B*U" or "Bbar" with a shift.
Summand word_summand(const std::string& word, int shift = 0);

using K0Value = std::variant<K0Elem, FormValue>;
// Grammar: sums and products of integers, q, q^k, b, c, 1, tau(...), and at
// the top level form(x, y) or trace(x).
K0Value parse_k0(const std::string& text);

}  // namespace osb
