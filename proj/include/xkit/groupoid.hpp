#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "xkit/free_word.hpp"
#include "xkit/parse.hpp"
#include "xkit/presentation.hpp"

namespace xkit {

struct Edge {
  std::string name;
  int source = 0;
  int target = 0;
  bool operator==(const Edge&) const = default;
};

struct DirectedGraph {
  std::vector<std::string> objects;
  std::vector<Edge> edges;

  int object_index(const std::string& name) const;  // -1 when absent
  int edge_index(const std::string& name) const;
  int add_object(const std::string& name);
  int add_edge(const std::string& name, int source, int target);
  int letter_source(const Letter& l) const { return l.sign > 0 ? edges[l.gen].source : edges[l.gen].target; }
  int letter_target(const Letter& l) const { return l.sign > 0 ? edges[l.gen].target : edges[l.gen].source; }
  bool operator==(const DirectedGraph&) const = default;
};

// A composable chain of edges and formal inverses; empty means the identity at `start`.
struct EdgePath {
  int start = 0;
  std::vector<Letter> letters;

  bool is_identity() const { return letters.empty(); }
  bool operator==(const EdgePath&) const = default;
  auto operator<=>(const EdgePath&) const = default;
};

int path_end(const EdgePath& p, const DirectedGraph& g);
// Throws not_composable when consecutive letters do not meet.
void check_composable(const EdgePath& p, const DirectedGraph& g);
EdgePath groupoid_reduce(const EdgePath& p, const DirectedGraph& g);
EdgePath concat(const EdgePath& a, const EdgePath& b, const DirectedGraph& g);
EdgePath inverse(const EdgePath& p, const DirectedGraph& g);
EdgePath edge_path(const DirectedGraph& g, int edge, int sign = 1);
std::string to_string(const EdgePath& p, const DirectedGraph& g);
// Path from a word over edge names; "id_p" names the identity at p.
EdgePath parse_path(const SymWord& w, const DirectedGraph& g, int start_hint = -1);

struct GroupoidRelation {
  EdgePath lhs, rhs;
  bool operator==(const GroupoidRelation&) const = default;
};

struct GroupoidPresentation {
  DirectedGraph graph;
  std::vector<GroupoidRelation> relations;
  bool operator==(const GroupoidPresentation&) const = default;
};

// Checks composability and that each relation's sides are parallel.
void validate(const GroupoidPresentation& p);
// "objects: p,q; edges: e:p->q, f:p->q; rels: e*f^-1 = id_p"
GroupoidPresentation parse_groupoid(std::string_view text);
std::string to_text(const GroupoidPresentation& p);

// Objects and generators of the source sent to objects and paths of the target.
struct GroupoidMorphism {
  std::vector<int> object_map;
  std::vector<EdgePath> edge_map;
};

EdgePath apply(const GroupoidMorphism& f, const EdgePath& p, const DirectedGraph& target);

struct MorphismReport {
  bool endpoints_ok = true;
  bool relations_verified = false;  // only possible when the target is free
  bool relations_ok = true;
  std::vector<std::string> problems;
};
MorphismReport check_morphism(const GroupoidPresentation& src, const GroupoidPresentation& dst,
                              const GroupoidMorphism& f);

// Pushout of presentations: objects glued along W, generators of U and V, their relations,
// and i(w) = j(w) for every generator w of W.
GroupoidPresentation pushout(const GroupoidPresentation& w, const GroupoidPresentation& u,
                             const GroupoidPresentation& v, const GroupoidMorphism& i, const GroupoidMorphism& j);

// Component index of every object.
std::vector<int> components(const DirectedGraph& g);
// Spanning forest; edges are considered in `preference` order when given.
std::vector<int> maximal_tree(const DirectedGraph& g, const std::vector<int>& preference = {});

struct VertexGroup {
  GroupPresentation presentation;
  int base = 0;
  std::vector<int> edge_generator;    // generator index per edge, -1 for tree edges and other components
  std::vector<EdgePath> tree_path;    // path in the tree from base to each object of the component
  std::vector<char> in_component;

  // Word of tau_s * p * tau_t^-1 where p runs from s to t.
  FreeWord loop_word(const EdgePath& p) const;
};

VertexGroup vertex_group_data(const GroupoidPresentation& p, int base, const std::vector<int>& tree);
GroupPresentation vertex_group(const GroupoidPresentation& p, const std::string& object, const std::vector<int>& tree);

}  // namespace xkit
