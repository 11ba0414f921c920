#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "xkit/complex_eval.hpp"

namespace xkit {

// Element of a crossed complex in any degree: an object, a path or a chain.
struct CellElement {
  int degree = 0;
  int object = 0;
  EdgePath path;
  Chain chain;

  static CellElement at_object(int p) { return {0, p, {}, {}}; }
  static CellElement along(EdgePath p) { return {1, 0, std::move(p), {}}; }
  static CellElement of_chain(int degree, Chain c) { return {degree, 0, {}, std::move(c)}; }
};

// Basis element of a complex: degree 0 objects, degree 1 edges, higher the cell generators.
CellElement basis_element(const CrossedComplex& c, int degree, int index);
std::size_t basis_count(const CrossedComplex& c, int degree);
std::string basis_name(const CrossedComplex& c, int degree, int index);

struct TensorGenerator {
  int a_degree = 0, a_index = 0;
  int b_degree = 0, b_index = 0;
  int degree() const { return a_degree + b_degree; }
};

// A (x) B up to a maximal degree. Generators a~b are ordered by (deg a, index a, index b);
// objects and edges of the result follow the same order.
struct TensorComplex {
  CrossedComplex left, right;
  CrossedComplex complex;
  int max_degree = 0;
  std::vector<std::vector<TensorGenerator>> generators;  // by degree, including 0 and 1

  // Index of a~b among the generators of its degree; -1 when beyond max_degree.
  int index_of(int a_degree, int a_index, int b_degree, int b_index) const;

  std::map<std::array<int, 4>, int> lookup;
};

TensorComplex tensor_complex(const CrossedComplex& a, const CrossedComplex& b, int max_degree);

// theta(x, y) extended from generators by the additivity and action rules.
CellElement theta(const TensorComplex& t, const CellElement& x, const CellElement& y);
// Boundary of a~b by the case formula for its bidegree; degree-2 results are loops.
CellElement tensor_boundary(const TensorComplex& t, const TensorGenerator& g);

// Bidegrees (m, n) with m + n >= 1 not covered by any boundary or endpoint rule.
std::vector<std::pair<int, int>> silent_bidegrees(int max_degree);

struct TensorReport {
  ComplexReport validation;
  std::size_t dd_checked = 0;
  std::vector<std::pair<int, int>> silent;
  bool ok() const { return validation.ok() && silent.empty(); }
};
TensorReport check_tensor(const TensorComplex& t, std::size_t bound);

// a (x) b -> (-1)^{mn} b (x) a from A (x) B to B (x) A.
ComplexMorphism symmetry(const TensorComplex& ab, const TensorComplex& ba);
// B -> A (x) B, b -> a0 (x) b.
ComplexMorphism embed_second_factor(const TensorComplex& ab, int a0);
// f then g.
ComplexMorphism compose(const ComplexMorphism& f, const ComplexMorphism& g, const CrossedComplex& target);
bool is_identity_on_generators(const ComplexMorphism& f, const CrossedComplex& c);

TensorComplex cylinder(const CrossedComplex& c, int max_degree);

// Left homotopy of degree 1 from f to g: objects go to paths from f(p) to g(p), and a
// degree-n basis element to a degree n+1 element of the target.
struct HomotopyData {
  ComplexMorphism f, g;
  std::vector<EdgePath> on_objects;
  std::vector<Chain> on_edges;
  std::vector<std::vector<Chain>> on_cells;  // on_cells[k] for degree k + 2
};

// Builds I (x) A -> C from (f, g, H) and checks it is a morphism.
MorphismCheck check_homotopy(const CrossedComplex& source, const CrossedComplex& target, const HomotopyData& h,
                             std::size_t bound);

}  // namespace xkit
