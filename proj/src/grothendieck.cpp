#include "oddsoergel/grothendieck.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace osb {

LaurentPoly LaurentPoly::q(int e, long long c) {
  LaurentPoly p;
  p.add(e, c);
  return p;
}

long long LaurentPoly::coeff(int e) const {
  auto it = c_.find(e);
  return it == c_.end() ? 0 : it->second;
}

void LaurentPoly::add(int e, long long v) {
  if (v == 0) return;
  long long& slot = c_[e];
  slot += v;
  if (slot == 0) c_.erase(e);
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly r;
  for (auto [e, v] : c_) r.add(-e, v);
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (auto [e, v] : c_) r.add(e, -v);
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (auto [e, v] : o.c_) add(e, v);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (auto [e, v] : o.c_) add(e, -v);
  return *this;
}

std::string LaurentPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto [e, v] : c_) {
    long long a = v < 0 ? -v : v;
    if (first)
      os << (v < 0 ? "-" : "");
    else
      os << (v < 0 ? " - " : " + ");
    first = false;
    if (e == 0) {
      os << a;
      continue;
    }
    if (a != 1) os << a << "*";
    os << "q";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (auto [e, v] : a.coeffs())
    for (auto [f, w] : b.coeffs()) r.add(e + f, v * w);
  return r;
}

K0Elem K0Elem::one() { return {1, {}, {}, {}}; }
K0Elem K0Elem::b() { return {{}, 1, {}, {}}; }
K0Elem K0Elem::c() { return {{}, {}, 1, {}}; }
K0Elem K0Elem::bc() { return {{}, {}, {}, 1}; }
K0Elem K0Elem::scalar(const LaurentPoly& p) { return {p, {}, {}, {}}; }

std::string K0Elem::str() const {
  std::vector<std::pair<const LaurentPoly*, const char*>> parts = {{&a1, ""}, {&ab, "b"}, {&ac, "c"}, {&abc, "bc"}};
  std::string s;
  for (auto [p, name] : parts) {
    if (p->is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string coef = p->str();
    if (*name == 0)
      s += coef.find_first_of(" ") == std::string::npos ? coef : "(" + coef + ")";
    else if (coef == "1")
      s += name;
    else
      s += "(" + coef + ")*" + name;
  }
  return s.empty() ? "0" : s;
}

K0Elem operator+(const K0Elem& x, const K0Elem& y) { return {x.a1 + y.a1, x.ab + y.ab, x.ac + y.ac, x.abc + y.abc}; }
K0Elem operator-(const K0Elem& x, const K0Elem& y) { return {x.a1 - y.a1, x.ab - y.ab, x.ac - y.ac, x.abc - y.abc}; }
K0Elem operator*(const LaurentPoly& p, const K0Elem& x) { return {p * x.a1, p * x.ab, p * x.ac, p * x.abc}; }

namespace {

// u + v c with c^2 = 1
struct CPair {
  LaurentPoly u, v;
};
CPair operator*(const CPair& x, const CPair& y) { return {x.u * y.u + x.v * y.v, x.u * y.v + x.v * y.u}; }
CPair operator+(const CPair& x, const CPair& y) { return {x.u + y.u, x.v + y.v}; }

}  // namespace

K0Elem k0_mul(const K0Elem& x, const K0Elem& y) {
  // x = P + Q b with P, Q in Z[q, q^-1][c]; b^2 = (q^-1 + q c) b
  CPair p1{x.a1, x.ac}, q1{x.ab, x.abc}, p2{y.a1, y.ac}, q2{y.ab, y.abc};
  CPair bb{LaurentPoly::q(-1), LaurentPoly::q(1)};
  CPair p = p1 * p2;
  CPair q = p1 * q2 + q1 * p2 + q1 * q2 * bb;
  return {p.u, q.u, p.v, q.v};
}

K0Elem k0_tau(const K0Elem& x) { return {x.a1.bar(), x.abc.bar(), x.ac.bar(), x.ab.bar()}; }

std::map<int, long long> FormValue::series(int cutoff) const {
  std::map<int, long long> out;
  for (auto [e, v] : num.coeffs())
    for (int k = 0; e + 4 * k <= cutoff; ++k) out[e + 4 * k] += v * (k + 1);
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::string FormValue::str() const {
  if (num.is_zero()) return "0";
  return "(" + num.str() + ")/(1 - q^4)^2";
}

FormValue form(const K0Elem& x, const K0Elem& y) {
  // basis 1, b, c, bc; numerators over (1 - q^4)^2
  static const LaurentPoly q1 = LaurentPoly::q(1), q2 = LaurentPoly::q(2, 2), q3 = LaurentPoly::q(3),
                           bb = LaurentPoly(1) + LaurentPoly::q(4);
  static const LaurentPoly table[4][4] = {
      {1, q3, 0, q1},
      {q1, bb, q3, q2},
      {0, q1, 1, q3},
      {q3, q2, q1, bb},
  };
  const LaurentPoly* xs[4] = {&x.a1, &x.ab, &x.ac, &x.abc};
  const LaurentPoly* ys[4] = {&y.a1, &y.ab, &y.ac, &y.abc};
  FormValue out;
  for (int i = 0; i < 4; ++i) {
    if (xs[i]->is_zero()) continue;
    LaurentPoly xb = xs[i]->bar();
    for (int j = 0; j < 4; ++j)
      if (!ys[j]->is_zero()) out.num += xb * *ys[j] * table[i][j];
  }
  return out;
}

FormValue trace(const K0Elem& x) { return form(K0Elem::one(), x); }

K0Elem class_of_label(const std::string& label) {
  if (label == "R") return K0Elem::one();
  if (label == "U") return K0Elem::c();
  if (label == "B") return K0Elem::b();
  if (label == "Bbar") return K0Elem::bc();
  throw std::invalid_argument("class_of: unrecognized summand label " + label);
}

K0Elem class_of(const Summand& s) {
  K0Elem r = K0Elem::one();
  for (const auto& w : s.word) r = k0_mul(r, class_of_label(w));
  return LaurentPoly::q(s.shift) * r;
}

K0Elem euler_class(const Complex& c) {
  K0Elem r;
  for (int deg = c.lo; deg <= c.hi(); ++deg)
    for (const auto& s : c.at(deg)) {
      K0Elem k = class_of(s);
      r = (deg % 2) ? r - k : r + k;
    }
  return r;
}

Summand word_summand(const std::string& word, int shift_by) {
  Summand s;
  std::string cur;
  std::stringstream ss(word);
  while (std::getline(ss, cur, '*')) {
    if (!is_standard_label(cur)) throw std::invalid_argument("unknown factor '" + cur + "' in " + word);
    s.word.push_back(cur);
  }
  if (s.word.empty()) throw std::invalid_argument("empty word");
  s.shift = shift_by;
  if (s.word.size() == 1) {
    s.obj = standard_object(s.word[0], shift_by);
    return s;
  }
  Obj o = standard_object(s.word[0], shift_by);
  for (size_t i = 1; i < s.word.size(); ++i) o = tensor(o, standard_object(s.word[i], 0));
  s.obj = o;
  return s;
}

HomCheck check_against_hom(const Summand& x, const Summand& y, int d_max, int workers) {
  HomCheck h;
  auto predicted = form(class_of(x), class_of(y)).series(d_max);
  auto computed = graded_hom_series(x.obj, y.obj, d_max, workers);
  int lo = computed.empty() ? d_max : computed.begin()->first;
  if (!predicted.empty()) lo = std::min(lo, predicted.begin()->first);
  for (int d = lo; d <= d_max; ++d) {
    long long p = predicted.count(d) ? predicted.at(d) : 0;
    int got = computed.count(d) ? computed.at(d) : 0;
    if (p == 0 && got == 0) continue;
    h.rows.emplace_back(d, p, got);
    if (p != got) {
      h.ok = false;
      if (h.message.empty())
        h.message = "degree " + std::to_string(d) + ": form gives " + std::to_string(p) + ", Hom has " +
                    std::to_string(got);
    }
  }
  return h;
}

namespace {

class K0Parser {
 public:
  explicit K0Parser(const std::string& s) : s_(s) {}

  K0Value top() {
    K0Value v;
    skip();
    if (peek_word("form")) {
      expect_word("form");
      expect('(');
      K0Elem x = sum();
      expect(',');
      K0Elem y = sum();
      expect(')');
      v = form(x, y);
    } else if (peek_word("trace")) {
      expect_word("trace");
      expect('(');
      K0Elem x = sum();
      expect(')');
      v = trace(x);
    } else {
      v = sum();
    }
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  const std::string& s_;
  size_t i_ = 0;

  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("parse_k0: " + why + " at position " + std::to_string(i_));
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool at(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  void expect(char c) {
    if (!at(c)) fail(std::string("expected '") + c + "'");
    ++i_;
  }
  bool peek_word(const std::string& w) {
    skip();
    if (s_.compare(i_, w.size(), w) != 0) return false;
    size_t j = i_ + w.size();
    return j >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[j]));
  }
  void expect_word(const std::string& w) {
    if (!peek_word(w)) fail("expected " + w);
    i_ += w.size();
  }
  long long integer() {
    skip();
    size_t j = i_;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == i_) fail("expected an integer");
    long long v = std::stoll(s_.substr(i_, j - i_));
    i_ = j;
    return v;
  }
  int exponent() {
    bool paren = at('(');
    if (paren) ++i_;
    int sign = 1;
    if (at('-')) {
      ++i_;
      sign = -1;
    }
    int e = int(integer()) * sign;
    if (paren) expect(')');
    return e;
  }

  K0Elem sum() {
    int sign = 1;
    if (at('-')) {
      ++i_;
      sign = -1;
    }
    K0Elem r = product();
    if (sign < 0) r = K0Elem() - r;
    for (;;) {
      if (at('+')) {
        ++i_;
        r = r + product();
      } else if (at('-')) {
        ++i_;
        r = r - product();
      } else {
        return r;
      }
    }
  }
  K0Elem product() {
    K0Elem r = factor();
    while (at('*')) {
      ++i_;
      r = k0_mul(r, factor());
    }
    return r;
  }
  K0Elem factor() {
    skip();
    if (at('(')) {
      ++i_;
      K0Elem r = sum();
      expect(')');
      return power(r);
    }
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
      return power(K0Elem::scalar(LaurentPoly(integer())));
    if (peek_word("tau")) {
      expect_word("tau");
      expect('(');
      K0Elem r = sum();
      expect(')');
      return k0_tau(r);
    }
    if (peek_word("q")) {
      ++i_;
      int e = 1;
      if (at('^')) {
        ++i_;
        e = exponent();
      }
      return K0Elem::scalar(LaurentPoly::q(e));
    }
    if (peek_word("bc")) {
      i_ += 2;
      return power(K0Elem::bc());
    }
    if (peek_word("b")) {
      ++i_;
      return power(K0Elem::b());
    }
    if (peek_word("c")) {
      ++i_;
      return power(K0Elem::c());
    }
    fail("expected a factor");
  }
  K0Elem power(K0Elem x) {
    if (!at('^')) return x;
    ++i_;
    int e = exponent();
    if (e < 0) fail("negative power of a non-scalar");
    K0Elem r = K0Elem::one();
    for (int k = 0; k < e; ++k) r = k0_mul(r, x);
    return r;
  }
};

}  // namespace

K0Value parse_k0(const std::string& text) { return K0Parser(text).top(); }

}  // namespace osb
