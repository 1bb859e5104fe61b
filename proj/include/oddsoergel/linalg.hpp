#pragma once

#include "oddsoergel/skewpoly.hpp"

#include <map>
#include <optional>
#include <vector>

namespace osb {

using SparseRow = std::vector<std::pair<int, Q>>;  // sorted by column

// Incremental row echelon form over Q with sparse rows.
class Echelon {
 public:
  explicit Echelon(int ncols) : ncols_(ncols) {}

  // Reduces the row against current pivots; returns true if it was
  // independent and got added.
  bool insert(SparseRow row);
  SparseRow reduce(SparseRow row) const;
  int rank() const { return int(pivots_.size()); }
  int ncols() const { return ncols_; }

  // Back substitution to reduced row echelon form.
  void make_reduced();
  // Kernel of the inserted rows (as a map on column space).
  std::vector<std::vector<Q>> nullspace();
  const std::map<int, SparseRow>& pivots() const { return pivots_; }

 private:
  int ncols_;
  std::map<int, SparseRow> pivots_;  // leading column -> row with leading 1
  bool reduced_ = false;
};

SparseRow axpy(const SparseRow& x, const Q& a, const SparseRow& y);  // x + a*y

using QMat = std::vector<std::vector<Q>>;

int rank(const QMat& m);
std::vector<std::vector<Q>> nullspace(const QMat& m);
// Some x with m x = b, if one exists.
std::optional<std::vector<Q>> solve(const QMat& m, const std::vector<Q>& b);
std::optional<QMat> inverse(const QMat& m);

}  // namespace osb
