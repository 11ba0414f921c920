#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "xkit/enumerate.hpp"
#include "xkit/free_crossed_module.hpp"
#include "xkit/group_ring.hpp"
#include "xkit/int_matrix.hpp"
#include "xkit/module_kernel.hpp"
#include "xkit/presentation.hpp"

namespace xkit {

// Right Fox derivative: d(uv)/dx = du/dx * phi(v) + dv/dx.
ZF fox_derivative(const FreeWord& w, int x);
ZG fox_derivative(const FreeWord& w, int x, const EnumeratedGroup& g);

// Universal phi-derivation into the free module on the generators.
std::vector<ZG> h1(const FreeWord& w, const EnumeratedGroup& g, std::size_t generators);
// g - 1
ZG h0(int element);

struct FoxJacobian {
  GroupPresentation presentation;
  EnumeratedGroup group;
  ModuleMatrix matrix;  // relators x generators

  std::size_t generators() const { return presentation.generators.size(); }
  // d1: e_x -> phi(x) - 1, as a generators x 1 matrix
  ModuleMatrix d1() const;
};

FoxJacobian fox_jacobian(const GroupPresentation& p, std::size_t bound);

struct DerivedDiagramReport {
  std::size_t elements_checked = 0;
  std::size_t words_checked = 0;
  bool upper_square_ok = true;  // d2 h2 = h1 mu
  bool lower_square_ok = true;  // d1 h1 = h0 phi
  bool d1d2_zero = true;
  bool exact_at_derived = true;  // Ker d1 = Im d2
  std::vector<std::string> problems;

  bool ok() const { return upper_square_ok && lower_square_ok && d1d2_zero && exact_at_derived; }
};

DerivedDiagramReport derived_diagram_check(const FreeCrossedModule& fcm, const std::vector<FcmElement>& elements,
                                           const std::vector<FreeWord>& words);
// All sequences of at most max_triples triples with conjugators of length at most max_conjugator,
// and all words of length at most max_conjugator + 2.
DerivedDiagramReport derived_diagram_check(const GroupPresentation& p, int max_triples, int max_conjugator,
                                           std::size_t bound);

struct IdentitiesModule {
  ModuleKernel kernel;          // of d2 acting on the free module on the relators
  AbelianInvariants invariants; // of the kernel as an abelian group
  std::size_t jacobian_rank = 0;
};

IdentitiesModule identities_module(const GroupPresentation& p, std::size_t bound);

// Z[G]-modules presented by a basis and relation rows, with boundary matrices;
// boundaries[n] goes from degree n to n-1.
struct OperatorChainComplex {
  FiniteGroup group;
  std::vector<std::size_t> ranks;
  std::vector<std::vector<std::string>> basis_names;
  std::vector<ModuleMatrix> boundaries;  // boundaries[0] is empty
  std::vector<ModuleMatrix> relations;   // per degree, may be shorter than ranks

  // Degrees n where boundary(n) then boundary(n-1) does not land in the relations.
  std::vector<int> failing_squares() const;
};

// Degrees 0..2 of the chain complex of a presentation: Z[G] <- D_phi <- free module on relators.
OperatorChainComplex nabla(const GroupPresentation& p, std::size_t bound);

std::string to_string(const OperatorChainComplex& c);

}  // namespace xkit
