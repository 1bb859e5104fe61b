#include "oddsoergel/linalg.hpp"

#include <stdexcept>

namespace osb {

SparseRow axpy(const SparseRow& x, const Q& a, const SparseRow& y) {
  SparseRow out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.push_back({y[j].first, a * y[j].second});
      ++j;
    } else {
      Q c = x[i].second + a * y[j].second;
      if (c != 0) out.push_back({x[i].first, c});
      ++i;
      ++j;
    }
  }
  return out;
}

SparseRow Echelon::reduce(SparseRow row) const {
  SparseRow done;
  while (!row.empty()) {
    auto it = pivots_.find(row.front().first);
    if (it == pivots_.end()) {
      // keep the leading entry and continue with the tail
      done.push_back(row.front());
      row.erase(row.begin());
      continue;
    }
    Q a = -row.front().second;
    row = axpy(row, a, it->second);
  }
  return done;
}

bool Echelon::insert(SparseRow row) {
  for (;;) {
    if (row.empty()) return false;
    auto it = pivots_.find(row.front().first);
    if (it == pivots_.end()) break;
    Q a = -row.front().second;
    row = axpy(row, a, it->second);
  }
  Q lead = row.front().second;
  if (lead != 1) {
    Q inv = 1 / lead;
    for (auto& e : row) e.second *= inv;
  }
  pivots_.emplace(row.front().first, std::move(row));
  reduced_ = false;
  return true;
}

void Echelon::make_reduced() {
  if (reduced_) return;
  // later pivots first, so each row only needs already-reduced rows
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    SparseRow& row = it->second;
    SparseRow out;
    out.push_back(row.front());
    SparseRow tail(row.begin() + 1, row.end());
    while (!tail.empty()) {
      auto p = pivots_.find(tail.front().first);
      if (p == pivots_.end()) {
        out.push_back(tail.front());
        tail.erase(tail.begin());
      } else {
        Q a = -tail.front().second;
        tail = axpy(tail, a, p->second);
      }
    }
    row = std::move(out);
  }
  reduced_ = true;
}

std::vector<std::vector<Q>> Echelon::nullspace() {
  make_reduced();
  std::vector<std::vector<Q>> out;
  std::vector<bool> is_pivot(ncols_, false);
  for (const auto& [c, r] : pivots_) is_pivot[c] = true;
  for (int f = 0; f < ncols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Q> v(ncols_);
    v[f] = 1;
    for (const auto& [c, r] : pivots_)
      for (const auto& [k, a] : r)
        if (k == f) v[c] = -a;
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

Echelon echelon_of(const QMat& m, int ncols) {
  Echelon e(ncols);
  for (const auto& r : m) {
    SparseRow s;
    for (int j = 0; j < int(r.size()); ++j)
      if (r[j] != 0) s.push_back({j, r[j]});
    e.insert(std::move(s));
  }
  return e;
}

int ncols_of(const QMat& m) { return m.empty() ? 0 : int(m[0].size()); }

}  // namespace

int rank(const QMat& m) { return echelon_of(m, ncols_of(m)).rank(); }

std::vector<std::vector<Q>> nullspace(const QMat& m) {
  Echelon e = echelon_of(m, ncols_of(m));
  return e.nullspace();
}

std::optional<std::vector<Q>> solve(const QMat& m, const std::vector<Q>& b) {
  int n = ncols_of(m);
  if (m.size() != b.size()) throw std::invalid_argument("solve: shape mismatch");
  QMat aug = m;
  for (size_t i = 0; i < aug.size(); ++i) {
    aug[i].resize(n);
    aug[i].push_back(b[i]);
  }
  Echelon e = echelon_of(aug, n + 1);
  e.make_reduced();
  std::vector<Q> x(n);
  for (const auto& [c, r] : e.pivots()) {
    if (c == n) return std::nullopt;
    for (const auto& [k, a] : r)
      if (k == n) x[c] = a;
  }
  return x;
}

std::optional<QMat> inverse(const QMat& m) {
  int n = int(m.size());
  QMat aug(n, std::vector<Q>(2 * n));
  for (int i = 0; i < n; ++i) {
    if (int(m[i].size()) != n) throw std::invalid_argument("inverse: not square");
    for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  Echelon e = echelon_of(aug, 2 * n);
  e.make_reduced();
  if (e.rank() != n) return std::nullopt;
  QMat inv(n, std::vector<Q>(n));
  int i = 0;
  for (const auto& [c, r] : e.pivots()) {
    if (c != i) return std::nullopt;
    for (const auto& [k, a] : r)
      if (k >= n) inv[i][k - n] = a;
    ++i;
  }
  return inv;
}

}  // namespace osb
