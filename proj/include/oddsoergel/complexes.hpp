#pragma once

#include "oddsoergel/bimod.hpp"

#include <string>
#include <vector>

namespace osb {

// Indecomposable labels: "R", "U", "B", "Bbar".
Obj standard_object(const std::string& label, int shift);
bool is_standard_label(const std::string& label);

struct Summand {
  std::vector<std::string> word;  // tensor factors, each a standard label
  int shift = 0;
  Obj obj;

  std::string label() const;  // factors joined by '*'
  bool standard() const { return word.size() == 1; }
};

Summand standard_summand(const std::string& label, int shift);

// Bounded cochain complex. terms[k] sits in cohomological degree lo + k;
// d[k][a][b] is the component terms[k][a] -> terms[k + 1][b].
struct Complex {
  int lo = 0;
  std::vector<std::vector<Summand>> terms;
  std::vector<std::vector<std::vector<Morphism>>> d;

  int hi() const { return lo + int(terms.size()) - 1; }
  const std::vector<Summand>& at(int deg) const;
  int total_summands() const;
};

struct ComplexCheck {
  bool ok = true;
  std::string message;
};
// Shapes, degrees, bimodule-map verification and d o d = 0.
ComplexCheck check_complex(const Complex& c);
bool d_squared_zero(const Complex& c);

Complex rouquier();      // B -> R{-1}, B in degree 0
Complex rouquier_inv();  // R{1} -> Bbar, Bbar in degree 0
Complex one_term(const Summand& s, int degree = 0);

// Total complex; the component along the second factor's differential out of
// bidegree (i, j) carries the sign (-1)^i.
Complex tensor_complexes(const Complex& c, const Complex& e);

// Splits a bimodule into standard indecomposables.
struct Piece {
  Summand summand;
  Morphism incl, proj;  // summand -> M, M -> summand
};
std::vector<Piece> decompose(const Obj& m);

// Rewrites every term as a direct sum of standard indecomposables.
Complex normalize(const Complex& c);

struct Elimination {
  int degree = 0;  // cohomological degree of the pivot source
  std::string label;
  int shift = 0;
  Q lambda;
};
struct ReductionTrace {
  std::vector<Elimination> steps;
  bool d2_every_step = true;
};

// The entry d[degree][a][b] must be a nonzero multiple of the identity between
// summands with the same label and shift; throws std::invalid_argument otherwise.
Complex gaussian_eliminate(const Complex& c, int degree, int a, int b);
// Normalizes, then eliminates pivots in order of lowest degree, then lowest
// source index, then lowest target index, until none remain.
Complex reduce(const Complex& c, ReductionTrace* trace = nullptr);

// n >= 1; tensors one factor at a time and reduces after each step.
Complex rouquier_power(int n, bool inverse, std::vector<ReductionTrace>* traces = nullptr);

struct ShapeEntry {
  int degree;
  std::string label;
  int shift;
};
using Shape = std::vector<ShapeEntry>;
Shape expected_rouquier_shape(int n, bool inverse);
Shape shape_of(const Complex& c);
std::string shape_str(const Shape& s);

struct ShapeReport {
  bool ok = true;
  std::string message;
};
// Per-degree comparison up to isomorphism; with check_generators, the
// differentials between B and Bbar terms must send 1(x)1 and 1(x)1bar to
// nonzero multiples of the stated images.
ShapeReport matches_shape(const Complex& c, const Shape& s, bool check_generators = false);
bool generator_images_ok(const Complex& c, std::string* why = nullptr);

std::string complex_json(const Complex& c, const ReductionTrace* trace = nullptr);

}  // namespace osb
