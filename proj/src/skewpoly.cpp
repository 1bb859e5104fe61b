#include "oddsoergel/skewpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace osb {

int mono_mul_sign(Mono a, Mono b) {
  int s = a.exp(1) * b.exp(0) + a.exp(2) * b.exp(0) + a.exp(2) * b.exp(1);
  return (s & 1) ? -1 : 1;
}

Mono mono_mul(Mono a, Mono b) {
  return Mono::of(a.exp(0) + b.exp(0), a.exp(1) + b.exp(1), a.exp(2) + b.exp(2));
}

namespace {

void normalize(std::vector<SkewPoly::Term>& v) {
  std::sort(v.begin(), v.end(),
            [](const auto& x, const auto& y) { return y.first < x.first; });
  size_t w = 0;
  for (size_t r = 0; r < v.size();) {
    Mono m = v[r].first;
    Q c = v[r].second;
    size_t k = r + 1;
    while (k < v.size() && v[k].first == m) c += v[k++].second;
    if (c != 0) v[w++] = {m, c};
    r = k;
  }
  v.resize(w);
}

void check_index(int n, int i) {
  if (i < 1 || i >= n) throw std::invalid_argument("transposition index out of range");
}

}  // namespace

SkewPoly SkewPoly::constant(int n, const Q& c) {
  SkewPoly p(n);
  if (c != 0) p.t_.push_back({Mono{}, c});
  return p;
}

SkewPoly SkewPoly::var(int n, int i) {
  if (i < 1 || i > n) throw std::invalid_argument("variable index out of range");
  int e[3] = {0, 0, 0};
  e[i - 1] = 1;
  return mono(n, Mono::of(e[0], e[1], e[2]));
}

SkewPoly SkewPoly::mono(int n, Mono m, const Q& c) {
  SkewPoly p(n);
  if (c != 0) p.t_.push_back({m, c});
  return p;
}

SkewPoly SkewPoly::from_terms(int n, std::vector<Term> terms) {
  SkewPoly p(n);
  normalize(terms);
  p.t_ = std::move(terms);
  return p;
}

std::optional<int> SkewPoly::homogeneous_degree() const {
  if (t_.empty()) return std::nullopt;
  int d = t_[0].first.degree();
  for (const auto& [m, c] : t_)
    if (m.degree() != d) return std::nullopt;
  return d;
}

bool SkewPoly::is_homogeneous_of(int d) const {
  for (const auto& [m, c] : t_)
    if (m.degree() != d) return false;
  return true;
}

Q SkewPoly::coeff(Mono m) const {
  for (const auto& [k, c] : t_)
    if (k == m) return c;
  return 0;
}

SkewPoly SkewPoly::part_of_degree(int d) const {
  SkewPoly p(n_);
  for (const auto& t : t_)
    if (t.first.degree() == d) p.t_.push_back(t);
  return p;
}

void SkewPoly::check_same(const SkewPoly& o) const {
  if (n_ != o.n_) throw std::invalid_argument("mismatched number of variables");
}

SkewPoly SkewPoly::operator+(const SkewPoly& o) const {
  SkewPoly r = *this;
  r += o;
  return r;
}

SkewPoly SkewPoly::operator-(const SkewPoly& o) const {
  SkewPoly r = *this;
  r -= o;
  return r;
}

SkewPoly SkewPoly::operator-() const {
  SkewPoly r = *this;
  for (auto& t : r.t_) t.second = -t.second;
  return r;
}

SkewPoly& SkewPoly::operator+=(const SkewPoly& o) {
  check_same(o);
  if (o.t_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    if (j == o.t_.size() || (i < t_.size() && o.t_[j].first < t_[i].first)) {
      out.push_back(std::move(t_[i++]));
    } else if (i == t_.size() || t_[i].first < o.t_[j].first) {
      out.push_back(o.t_[j++]);
    } else {
      Q c = t_[i].second + o.t_[j].second;
      if (c != 0) out.push_back({t_[i].first, c});
      ++i;
      ++j;
    }
  }
  t_ = std::move(out);
  return *this;
}

SkewPoly& SkewPoly::operator-=(const SkewPoly& o) { return *this += -o; }

SkewPoly SkewPoly::operator*(const Q& c) const {
  if (c == 0) return SkewPoly(n_);
  SkewPoly r = *this;
  for (auto& t : r.t_) t.second *= c;
  return r;
}

SkewPoly mul(const SkewPoly& p, const SkewPoly& q) {
  p.check_same(q);
  SkewPoly r(p.n_);
  if (p.t_.empty() || q.t_.empty()) return r;
  std::vector<SkewPoly::Term> v;
  v.reserve(p.t_.size() * q.t_.size());
  for (const auto& [a, ca] : p.t_)
    for (const auto& [b, cb] : q.t_) {
      Q c = ca * cb;
      if (mono_mul_sign(a, b) < 0) c = -c;
      v.push_back({mono_mul(a, b), c});
    }
  normalize(v);
  r.t_ = std::move(v);
  return r;
}

SkewPoly SkewPoly::operator*(const SkewPoly& o) const { return mul(*this, o); }

bool SkewPoly::operator==(const SkewPoly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (size_t i = 0; i < t_.size(); ++i)
    if (!(t_[i].first == o.t_[i].first) || t_[i].second != o.t_[i].second) return false;
  return true;
}

std::string q_str(const Q& q) { return q.get_str(); }

std::string SkewPoly::str() const {
  if (t_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : t_) {
    Q a = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (int i = 0; i < 3; ++i) {
      int e = m.exp(i);
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += q_str(a);
    } else {
      if (a != 1) out += q_str(a) + "*";
      out += mono;
    }
  }
  return out;
}

SkewPoly pow(const SkewPoly& p, int k) {
  SkewPoly r = SkewPoly::constant(p.nvars(), 1);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

SkewPoly act_s(int i, const SkewPoly& p) {
  int n = p.nvars();
  check_index(n, i);
  std::vector<SkewPoly::Term> v;
  v.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    int e[3] = {m.exp(0), m.exp(1), m.exp(2)};
    int sign = ((m.total() + e[i - 1] * e[i]) & 1) ? -1 : 1;
    std::swap(e[i - 1], e[i]);
    v.push_back({Mono::of(e[0], e[1], e[2]), sign < 0 ? Q(-c) : c});
  }
  return SkewPoly::from_terms(n, std::move(v));
}

namespace {

// d(x_v m') = d(x_v) m' + s(x_v) d(m'), peeling the first variable.
const SkewPoly& demazure_mono(int i, int n, Mono m,
                              std::unordered_map<uint32_t, SkewPoly>& memo) {
  auto it = memo.find(m.key);
  if (it != memo.end()) return it->second;
  SkewPoly r(n);
  if (m.total() > 0) {
    int e[3] = {m.exp(0), m.exp(1), m.exp(2)};
    int v = 0;
    while (e[v] == 0) ++v;
    e[v] -= 1;
    Mono rest = Mono::of(e[0], e[1], e[2]);
    if (v + 1 == i || v + 1 == i + 1) r += SkewPoly::mono(n, rest);
    SkewPoly sx = act_s(i, SkewPoly::var(n, v + 1));
    r += sx * demazure_mono(i, n, rest, memo);
  }
  return memo.emplace(m.key, std::move(r)).first->second;
}

}  // namespace

SkewPoly demazure(int i, const SkewPoly& p) {
  int n = p.nvars();
  check_index(n, i);
  std::unordered_map<uint32_t, SkewPoly> memo;
  SkewPoly r(n);
  for (const auto& [m, c] : p.terms()) r += demazure_mono(i, n, m, memo) * c;
  return r;
}

bool is_invariant(int i, const SkewPoly& p) { return demazure(i, p).is_zero(); }

SkewPoly E1() { return SkewPoly::var(2, 1) - SkewPoly::var(2, 2); }
SkewPoly E2() { return SkewPoly::var(2, 1) * SkewPoly::var(2, 2); }

SkewPoly e_monomial(int a, int b) { return pow(E1(), a) * pow(E2(), b); }

SkewPoly EExpr::expand() const {
  SkewPoly r(2);
  for (const auto& [ab, c] : terms) r += e_monomial(ab.first, ab.second) * c;
  return r;
}

std::string EExpr::str() const {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  // highest E1-degree first, matching the leading-term order of the expansion
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    auto [a, b] = it->first;
    const Q& c = it->second;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    if (a > 0) mono += "E1" + (a > 1 ? "^" + std::to_string(a) : std::string());
    if (b > 0) {
      if (!mono.empty()) mono += "*";
      mono += "E2" + (b > 1 ? "^" + std::to_string(b) : std::string());
    }
    Q x = abs(c);
    if (mono.empty()) {
      out += q_str(x);
    } else {
      if (x != 1) out += q_str(x) + "*";
      out += mono;
    }
  }
  return out;
}

EExpr rs_normal_form(const SkewPoly& p) {
  if (p.nvars() != 2) throw std::invalid_argument("rs_normal_form needs two variables");
  if (!is_invariant(1, p)) throw std::invalid_argument("element is not invariant");
  EExpr out;
  SkewPoly rest = p;
  while (!rest.is_zero()) {
    const auto& [m, c] = rest.terms().front();
    int i = m.exp(0), j = m.exp(1);
    if (i < j) throw std::invalid_argument("element is not invariant");
    SkewPoly e = e_monomial(i - j, j);
    Q coef = c / e.terms().front().second;
    out.terms[{i - j, j}] += coef;
    rest -= e * coef;
  }
  return out;
}

Decomp left_decompose(const SkewPoly& p, int v, int i) {
  int n = p.nvars();
  check_index(n, i);
  if (v != i && v != i + 1) throw std::invalid_argument("basis variable not moved by s_i");
  SkewPoly c1 = act_s(i, demazure(i, p));
  SkewPoly c0 = p - c1 * SkewPoly::var(n, v);
  return {c0, c1};
}

Decomp right_decompose(const SkewPoly& p, int v, int i) {
  int n = p.nvars();
  check_index(n, i);
  if (v != i && v != i + 1) throw std::invalid_argument("basis variable not moved by s_i");
  SkewPoly e1 = demazure(i, p);
  SkewPoly e0 = p - SkewPoly::var(n, v) * e1;
  return {e0, e1};
}

int ring_nvars(Ring r) { return (r == Ring::R || r == Ring::Rs) ? 2 : 3; }

const char* ring_name(Ring r) {
  switch (r) {
    case Ring::R: return "R";
    case Ring::Rs: return "Rs";
    case Ring::R3: return "R3";
    case Ring::R3s1: return "R3^1";
    case Ring::R3s2: return "R3^2";
  }
  return "?";
}

std::vector<SkewPoly> ring_generators(Ring r) {
  auto x = [&](int i) { return SkewPoly::var(ring_nvars(r), i); };
  switch (r) {
    case Ring::R: return {x(1), x(2)};
    case Ring::Rs: return {E1(), E2()};
    case Ring::R3: return {x(1), x(2), x(3)};
    case Ring::R3s1: return {x(1) - x(2), x(1) * x(2), x(3)};
    case Ring::R3s2: return {x(1), x(2) - x(3), x(2) * x(3)};
  }
  return {};
}

std::vector<Mono> monomials_of_total(int n, int k) {
  std::vector<Mono> out;
  if (n == 2) {
    for (int a = k; a >= 0; --a) out.push_back(Mono::of(a, k - a));
  } else {
    for (int a = k; a >= 0; --a)
      for (int b = k - a; b >= 0; --b) out.push_back(Mono::of(a, b, k - a - b));
  }
  return out;
}

std::vector<SkewPoly> degree_slice(Ring r, int d) {
  if (d % 2 != 0) throw std::invalid_argument("odd degree slice");
  std::vector<SkewPoly> out;
  if (d < 0) return out;
  int k = d / 2;
  switch (r) {
    case Ring::R:
    case Ring::R3:
      for (Mono m : monomials_of_total(ring_nvars(r), k))
        out.push_back(SkewPoly::mono(ring_nvars(r), m));
      break;
    case Ring::Rs:
      for (int b = 0; 2 * b <= k; ++b) out.push_back(e_monomial(k - 2 * b, b));
      break;
    case Ring::R3s1:
    case Ring::R3s2:
      throw std::invalid_argument("slice of a three-variable invariant ring needs threestrand");
  }
  return out;
}

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  int n;
  bool eonly;

  void ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("parse error at " + std::to_string(pos) + ": " + what);
  }
  int integer() {
    ws();
    size_t st = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (st == pos) fail("expected integer");
    return std::stoi(s.substr(st, pos - st));
  }
  int exponent() {
    ws();
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      return integer();
    }
    return 1;
  }
  SkewPoly factor() {
    ws();
    if (pos >= s.size()) fail("unexpected end");
    char ch = s[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t st = pos;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
        ++pos;
      Q q;
      try {
        q = Q(s.substr(st, pos - st));
      } catch (...) {
        fail("bad number");
      }
      q.canonicalize();
      return SkewPoly::constant(n, q);
    }
    if (ch == '(') {
      ++pos;
      SkewPoly p = expr();
      ws();
      if (pos >= s.size() || s[pos] != ')') fail("expected )");
      ++pos;
      return pow(p, exponent());
    }
    if (ch == 'x' || ch == 'E') {
      ++pos;
      int i = integer();
      SkewPoly base(n);
      if (ch == 'x') {
        if (eonly) fail("x variable in E-expression");
        if (i < 1 || i > n) fail("variable index");
        base = SkewPoly::var(n, i);
      } else {
        if (n != 2 || (i != 1 && i != 2)) fail("E generator");
        base = i == 1 ? E1() : E2();
      }
      return pow(base, exponent());
    }
    fail(std::string("unexpected '") + ch + "'");
  }
  SkewPoly term() {
    SkewPoly p = factor();
    for (;;) {
      ws();
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        p = p * factor();
      } else {
        return p;
      }
    }
  }
  SkewPoly expr() {
    ws();
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
    SkewPoly p = term();
    if (neg) p = -p;
    for (;;) {
      ws();
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        bool minus = s[pos++] == '-';
        SkewPoly t = term();
        p = minus ? p - t : p + t;
      } else {
        return p;
      }
    }
  }
};

}  // namespace

SkewPoly parse_skewpoly(const std::string& s, int n) {
  Parser ps{s, 0, n, false};
  SkewPoly p = ps.expr();
  ps.ws();
  if (ps.pos != s.size()) ps.fail("trailing input");
  return p;
}

EExpr parse_eexpr(const std::string& s) {
  Parser ps{s, 0, 2, true};
  SkewPoly p = ps.expr();
  ps.ws();
  if (ps.pos != s.size()) ps.fail("trailing input");
  return rs_normal_form(p);
}

}  // namespace osb
