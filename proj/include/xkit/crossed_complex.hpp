#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "xkit/groupoid.hpp"
#include "xkit/presentation.hpp"

namespace xkit {

// Term coef * gen^act where act runs from the base of gen to the object of the chain.
struct ChainTerm {
  int gen = 0;
  std::int64_t coef = 1;
  EdgePath act;

  bool operator==(const ChainTerm&) const = default;
  auto operator<=>(const ChainTerm&) const = default;
};

// Element of degree >= 2 at an object. In degree 2 the terms form an ordered product,
// in degrees >= 3 a sum.
struct Chain {
  int object = 0;
  std::vector<ChainTerm> terms;

  bool is_empty() const { return terms.empty(); }
  bool operator==(const Chain&) const = default;
};

struct CellGenerator {
  std::string name;
  int base = 0;
  EdgePath loop;   // boundary in degree 2
  Chain boundary;  // boundary in degrees >= 3
  bool operator==(const CellGenerator&) const = default;
};

struct CellLevel {
  std::vector<CellGenerator> generators;
  std::vector<Chain> relations;  // elements declared zero
  bool operator==(const CellLevel&) const = default;
};

// Free crossed complex on a basis, modulo relations in every degree.
struct CrossedComplex {
  std::string name;
  GroupoidPresentation c1;
  std::vector<CellLevel> levels;  // levels[k] holds degree k + 2

  const DirectedGraph& graph() const { return c1.graph; }
  int top_degree() const { return levels.empty() ? (c1.graph.edges.empty() ? 0 : 1) : static_cast<int>(levels.size()) + 1; }
  // Empty level beyond the top.
  const CellLevel& level(int degree) const;
  CellLevel& grow_level(int degree);
  std::size_t generator_count(int degree) const;
  int generator_index(int degree, const std::string& name) const;  // -1 when absent
  int base(int degree, int gen) const { return level(degree).generators.at(gen).base; }

  bool operator==(const CrossedComplex& o) const { return c1 == o.c1 && levels == o.levels; }
};

Chain zero_chain(int object);
Chain generator_chain(const CrossedComplex& c, int degree, int gen);
// a then b, both at the same object
Chain add(const Chain& a, const Chain& b);
Chain negate(const Chain& a);
Chain scale(const Chain& a, std::int64_t k);
// a^u for a path u starting at the object of a
Chain act(const Chain& a, const EdgePath& u, const DirectedGraph& g);
// Boundary of a degree-2 element as a loop at its object.
EdgePath boundary2(const CrossedComplex& c, const Chain& a);
// Boundary of an element of degree >= 3.
Chain boundary(const CrossedComplex& c, int degree, const Chain& a);

std::string to_string(const CrossedComplex& c, int degree, const Chain& a);
// Chain syntax over generator names of that degree; act words are edge paths.
Chain parse_element(const CrossedComplex& c, int degree, std::string_view text, int object_hint = -1);

// Line format:
//   objects: p, q
//   deg1: x: p->p, y: p->q
//   rel1: x^2 = id_p
//   deg2: r@p: x^3
//   rel2: 2*r
//   deg3: s@p: r - r^x
CrossedComplex parse_complex(std::string_view text);
std::string to_text(const CrossedComplex& c);

// C1 with the boundaries of degree-2 generators killed.
GroupoidPresentation fundamental_groupoid(const CrossedComplex& c);

CrossedComplex point_complex();
// Objects 0 and 1 with one edge i between them.
CrossedComplex interval_complex();
// One object; G in degree n. For n >= 2 the relators are abelianized and G must be abelian.
CrossedComplex make_cgn(const GroupPresentation& g, int n, std::size_t bound);
// G in degree 1 and the G-module M in degree n >= 2. action[x][m] is the image of generator m
// under generator x of G, as a word in the generators of M read additively.
CrossedComplex make_cg1mn(const GroupPresentation& g, const GroupPresentation& m,
                          const std::vector<std::vector<FreeWord>>& action, int n, std::size_t bound);
// Free crossed complex of a presentation: one object, edges the generators, degree 2 the relators.
CrossedComplex from_presentation(const GroupPresentation& p);

}  // namespace xkit
