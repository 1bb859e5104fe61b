#pragma once

#include "oddsoergel/bimod.hpp"

#include <map>
#include <string>
#include <vector>

namespace osb {

struct DegSlice {
  int degree = 0;
  std::vector<SkewPoly> basis;  // in reduced echelon form over the monomials
  int dim() const { return int(basis.size()); }
};

enum class Which { First = 1, Second = 2, Both = 3 };

// Kernel of d_1, d_2 or both on the degree-d slice of R3. For Both the
// kernels are intersected in the order given by second_first.
DegSlice invariant_slice(Which which, int d, bool second_first = false);

// Tensor word over {"B1", "B2", "U1", "U2"}; Bi carries the shift {-1}.
Obj three_word(const std::vector<std::string>& word);
int bimodule_slice(const std::vector<std::string>& word, int d);
int slice_dim(const Obj& m, int d);

// Graded dimensions of R3 (x)_{R^[2]} R3 {-3} for degrees -3 .. d_max.
std::map<int, int> b121hat_dims(int d_max, int workers = 1);

struct ObstructionRow {
  int degree;
  int hat_dim, triple_dim, bbar_dim;
  int image_rank;      // rank of the inclusion on this slice
  int quotient_rank;   // rank of the quotient map on this slice
};

struct ObstructionReport {
  int d_max = 0;
  bool sufficient_degree = true;
  int inclusion_dim = 0;
  int injective_upto = 0;  // largest degree with injectivity on all slices up to it
  bool injective = false;
  bool cokernel_match = false;
  bool exact = false;       // ker of the quotient equals the image on every slice
  int quotient_dim = 0;     // degree-0 maps B1B2B1 -> Bbar1 killing the generator image
  int section_candidates = 0;  // dim of degree-0 maps Bbar1 -> B1B2B1
  bool split = true;
  int section_dim = 0;      // dimension of the solution space; 0 when no section exists
  std::vector<ObstructionRow> rows;
  std::string note;

  bool ok() const {
    return sufficient_degree && inclusion_dim == 1 && injective && cokernel_match && exact && !split;
  }
};

ObstructionReport obstruction_report(int d_max = 12, int workers = 1);
std::string obstruction_json(const ObstructionReport& r);

}  // namespace osb
