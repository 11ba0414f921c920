#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xkit/crossed_complex.hpp"
#include "xkit/enumerate.hpp"
#include "xkit/fox.hpp"
#include "xkit/group_ring.hpp"
#include "xkit/groupoid_word.hpp"
#include "xkit/int_matrix.hpp"

namespace xkit {

// Linear algebra of one component of a crossed complex over its fundamental group.
// Elements of degree n >= 2 at an object q are read in the free Z[pi1]-module on the
// degree-n generators of the component: gen^u has coordinate phi(u) on gen.
class ComplexEvaluator {
 public:
  // With trivialize set, a fundamental group that does not close is replaced by the trivial group.
  ComplexEvaluator(const CrossedComplex& c, int object, std::size_t bound, bool trivialize = false);

  const CrossedComplex& complex() const { return *complex_; }
  bool pi1_finite() const { return finite_; }
  const FiniteGroup& group() const { return group_; }
  const VertexGroup& vertex_group() const { return vertex_; }
  int base() const { return vertex_.base; }
  bool in_component(int object) const { return vertex_.in_component[object] != 0; }
  // Word problem of C1; built on first use and may throw unbounded.
  const GroupoidWordSolver& c1() const;

  const std::vector<int>& local_generators(int degree) const;
  const std::vector<int>& local_edges() const { return local_edges_; }
  const std::vector<int>& local_objects() const { return local_objects_; }

  int phi(const EdgePath& path) const;
  std::vector<ZG> lin(int degree, const Chain& a) const;
  // Groupoid Fox derivative into the free module on the edges of the component.
  std::vector<ZG> h1(const EdgePath& path) const;
  // Z-basis of the G-closure of the degree-n relations (degree 1: h1 of the C1 relations).
  const IntMatrix& relation_lattice(int degree) const;
  bool in_relation_lattice(int degree, const std::vector<ZG>& v) const;

  // Degree 2 compares boundaries in C1 and linear parts; degrees >= 3 compare linear parts.
  bool is_zero(int degree, const Chain& a) const;
  bool equal(int degree, const Chain& a, const Chain& b) const;

 private:
  const CrossedComplex* complex_;
  std::size_t bound_;
  bool finite_ = false;
  VertexGroup vertex_;
  EnumeratedGroup pi1_;
  FiniteGroup group_;
  std::vector<int> edge_phi_;
  std::vector<int> local_edges_, local_objects_;
  std::vector<int> edge_local_;
  mutable std::vector<std::vector<int>> local_gens_;      // by degree
  mutable std::vector<std::vector<int>> gen_local_;       // by degree: global -> local or -1
  mutable std::map<int, IntMatrix> lattices_;
  mutable std::unique_ptr<GroupoidWordSolver> solver_;
};

// One evaluator per component, built on demand.
class ComplexContext {
 public:
  ComplexContext(const CrossedComplex& c, std::size_t bound) : complex_(&c), bound_(bound) {}
  const ComplexEvaluator& at(int object) const;

 private:
  const CrossedComplex* complex_;
  std::size_t bound_;
  mutable std::vector<int> component_;
  mutable std::map<int, std::unique_ptr<ComplexEvaluator>> by_component_;
};

struct AxiomResult {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::size_t checked = 0;
  std::vector<std::string> witnesses;
};

struct ComplexReport {
  std::vector<AxiomResult> axioms;
  std::vector<std::string> warnings;

  bool ok() const;
  const AxiomResult& axiom(const std::string& name) const;
};

// Checks boundaries are well placed, dd = 0, relations have zero boundary, the crossed
// module rule in degree 2 and trivial action of boundaries on degrees >= 3.
ComplexReport validate_complex(const CrossedComplex& c, std::size_t bound);

// H_n(C, p) for n >= 2. unsupported_action when pi1 does not close and the action is not
// visibly trivial; precondition_failed when the boundaries do not form a chain complex.
AbelianInvariants homology(const CrossedComplex& c, int n, int object, std::size_t bound);

// Chain complex with operators of the component of `object`.
OperatorChainComplex nabla(const CrossedComplex& c, int object, std::size_t bound);

struct ComplexMorphism {
  std::vector<int> objects;
  std::vector<EdgePath> edges;
  std::vector<std::vector<Chain>> cells;  // cells[k] for degree k + 2

  const std::vector<Chain>& cells_of(int degree) const;
};

EdgePath map_path(const ComplexMorphism& f, const EdgePath& p, const DirectedGraph& target);
Chain map_chain(const ComplexMorphism& f, int degree, const Chain& a, const CrossedComplex& target);

struct MorphismCheck {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<std::string> problems;
  std::vector<std::string> skipped;
};

// Compares f(d x) with d f(x) on every generator and checks that relations go to zero.
MorphismCheck check_morphism(const CrossedComplex& src, const CrossedComplex& dst, const ComplexMorphism& f,
                             std::size_t bound);

}  // namespace xkit
