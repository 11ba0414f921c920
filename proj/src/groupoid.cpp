#include "xkit/groupoid.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "xkit/error.hpp"

namespace xkit {

int DirectedGraph::object_index(const std::string& name) const {
  auto it = std::find(objects.begin(), objects.end(), name);
  return it == objects.end() ? -1 : static_cast<int>(it - objects.begin());
}

int DirectedGraph::edge_index(const std::string& name) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].name == name) return static_cast<int>(i);
  return -1;
}

int DirectedGraph::add_object(const std::string& name) {
  if (object_index(name) >= 0) fail(Errc::parse, "duplicate object '" + name + "'");
  objects.push_back(name);
  return static_cast<int>(objects.size()) - 1;
}

int DirectedGraph::add_edge(const std::string& name, int source, int target) {
  if (edge_index(name) >= 0) fail(Errc::parse, "duplicate edge '" + name + "'");
  if (source < 0 || target < 0 || source >= static_cast<int>(objects.size()) ||
      target >= static_cast<int>(objects.size()))
    fail(Errc::object_not_found, "edge '" + name + "' has an endpoint outside the object set");
  edges.push_back({name, source, target});
  return static_cast<int>(edges.size()) - 1;
}

int path_end(const EdgePath& p, const DirectedGraph& g) {
  return p.letters.empty() ? p.start : g.letter_target(p.letters.back());
}

void check_composable(const EdgePath& p, const DirectedGraph& g) {
  int at = p.start;
  for (const Letter& l : p.letters) {
    if (l.gen < 0 || l.gen >= static_cast<int>(g.edges.size())) fail(Errc::not_composable, "unknown edge");
    if (g.letter_source(l) != at)
      fail(Errc::not_composable, "edge " + g.edges[l.gen].name + " does not start at " + g.objects[at]);
    at = g.letter_target(l);
  }
}

EdgePath groupoid_reduce(const EdgePath& p, const DirectedGraph& g) {
  check_composable(p, g);
  return {p.start, free_reduce(p.letters)};
}

EdgePath concat(const EdgePath& a, const EdgePath& b, const DirectedGraph& g) {
  if (path_end(a, g) != b.start)
    fail(Errc::not_composable, "path ending at " + g.objects[path_end(a, g)] + " cannot precede one starting at " +
                                   g.objects[b.start]);
  std::vector<Letter> cat = a.letters;
  cat.insert(cat.end(), b.letters.begin(), b.letters.end());
  return {a.start, free_reduce(std::move(cat))};
}

EdgePath inverse(const EdgePath& p, const DirectedGraph& g) { return {path_end(p, g), invert_letters(p.letters)}; }

EdgePath edge_path(const DirectedGraph& g, int edge, int sign) {
  Letter l{edge, sign};
  return {g.letter_source(l), {l}};
}

std::string to_string(const EdgePath& p, const DirectedGraph& g) {
  if (p.letters.empty()) return "id_" + g.objects.at(p.start);
  std::vector<std::string> names;
  for (const auto& e : g.edges) names.push_back(e.name);
  return letters_to_string(p.letters, names);
}

EdgePath parse_path(const SymWord& w, const DirectedGraph& g, int start_hint) {
  EdgePath p;
  p.start = -1;
  int at = -1;
  for (const auto& sl : w) {
    if (sl.name.rfind("id_", 0) == 0) {
      int o = g.object_index(sl.name.substr(3));
      if (o < 0) fail(Errc::object_not_found, "no object for '" + sl.name + "'");
      if (at >= 0 && at != o) fail(Errc::not_composable, "identity " + sl.name + " does not match the path");
      if (p.start < 0) p.start = o;
      at = o;
      continue;
    }
    int e = g.edge_index(sl.name);
    if (e < 0) fail(Errc::parse, "unknown edge '" + sl.name + "'");
    Letter l{e, sl.sign};
    if (p.start < 0) p.start = g.letter_source(l);
    if (at >= 0 && g.letter_source(l) != at)
      fail(Errc::not_composable, "edge " + sl.name + " does not start at " + g.objects[at]);
    at = g.letter_target(l);
    p.letters.push_back(l);
  }
  if (p.start < 0) {
    if (start_hint < 0) fail(Errc::parse, "identity path needs an object, write id_<object>");
    p.start = start_hint;
  }
  p.letters = free_reduce(std::move(p.letters));
  return p;
}

void validate(const GroupoidPresentation& p) {
  for (const auto& r : p.relations) {
    check_composable(r.lhs, p.graph);
    check_composable(r.rhs, p.graph);
    if (r.lhs.start != r.rhs.start || path_end(r.lhs, p.graph) != path_end(r.rhs, p.graph))
      fail(Errc::not_composable,
           "relation sides " + to_string(r.lhs, p.graph) + " and " + to_string(r.rhs, p.graph) + " are not parallel");
  }
}

namespace {

GroupoidRelation parse_relation(const std::string& text, const DirectedGraph& g) {
  auto sides = split_top(text, '=');
  if (sides.size() == 1) {
    EdgePath lhs = parse_path(parse_word(sides[0]), g);
    return {lhs, EdgePath{lhs.start, {}}};
  }
  if (sides.size() != 2) fail(Errc::parse, "bad relation '" + text + "'");
  SymWord l = parse_word(sides[0]), r = parse_word(sides[1]);
  // an unanchored identity side borrows the other side's start
  int hint = -1;
  if (!l.empty()) hint = parse_path(l, g).start;
  else if (!r.empty()) hint = parse_path(r, g).start;
  return {parse_path(l, g, hint), parse_path(r, g, hint)};
}

}  // namespace

GroupoidPresentation parse_groupoid(std::string_view text) {
  GroupoidPresentation p;
  std::vector<std::string> rels;
  for (const auto& [key, value] : parse_fields(text)) {
    if (key == "objects") {
      for (const auto& o : split_top(value, ',')) p.graph.add_object(o);
    } else if (key == "edges") {
      for (const auto& e : split_top(value, ',')) {
        auto colon = e.find(':');
        auto arrow = e.find("->");
        if (colon == std::string::npos || arrow == std::string::npos || arrow < colon)
          fail(Errc::parse, "edge must read name:source->target, got '" + e + "'");
        std::string name = trim(e.substr(0, colon));
        std::string s = trim(e.substr(colon + 1, arrow - colon - 1)), t = trim(e.substr(arrow + 2));
        if (!is_name(name) || name.rfind("id_", 0) == 0) fail(Errc::parse, "bad edge name '" + name + "'");
        int si = p.graph.object_index(s), ti = p.graph.object_index(t);
        if (si < 0 || ti < 0) fail(Errc::object_not_found, "edge '" + name + "' uses an undeclared object");
        p.graph.add_edge(name, si, ti);
      }
    } else if (key == "rels") {
      for (const auto& r : split_top(value, ',')) rels.push_back(r);
    } else {
      fail(Errc::parse, "unknown groupoid field '" + key + "'");
    }
  }
  for (const auto& r : rels) p.relations.push_back(parse_relation(r, p.graph));
  validate(p);
  return p;
}

std::string to_text(const GroupoidPresentation& p) {
  std::string out = "objects: ";
  for (std::size_t i = 0; i < p.graph.objects.size(); ++i) out += (i ? "," : "") + p.graph.objects[i];
  out += "; edges: ";
  for (std::size_t i = 0; i < p.graph.edges.size(); ++i) {
    const auto& e = p.graph.edges[i];
    out += (i ? ", " : "") + e.name + ":" + p.graph.objects[e.source] + "->" + p.graph.objects[e.target];
  }
  out += "; rels: ";
  for (std::size_t i = 0; i < p.relations.size(); ++i)
    out += (i ? ", " : "") + to_string(p.relations[i].lhs, p.graph) + " = " + to_string(p.relations[i].rhs, p.graph);
  return out;
}

EdgePath apply(const GroupoidMorphism& f, const EdgePath& p, const DirectedGraph& target) {
  EdgePath out{f.object_map.at(p.start), {}};
  for (const Letter& l : p.letters) {
    const EdgePath& img = f.edge_map.at(l.gen);
    out = concat(out, l.sign > 0 ? img : inverse(img, target), target);
  }
  return out;
}

MorphismReport check_morphism(const GroupoidPresentation& src, const GroupoidPresentation& dst,
                              const GroupoidMorphism& f) {
  MorphismReport r;
  if (f.object_map.size() != src.graph.objects.size() || f.edge_map.size() != src.graph.edges.size()) {
    r.endpoints_ok = false;
    r.problems.push_back("map sizes do not match the source");
    return r;
  }
  for (std::size_t e = 0; e < src.graph.edges.size(); ++e) {
    const auto& edge = src.graph.edges[e];
    const EdgePath& img = f.edge_map[e];
    try {
      check_composable(img, dst.graph);
    } catch (const Error&) {
      r.endpoints_ok = false;
      r.problems.push_back("image of " + edge.name + " is not composable");
      continue;
    }
    if (img.start != f.object_map[edge.source] || path_end(img, dst.graph) != f.object_map[edge.target]) {
      r.endpoints_ok = false;
      r.problems.push_back("image of " + edge.name + " has wrong endpoints");
    }
  }
  if (!r.endpoints_ok) return r;
  r.relations_verified = dst.relations.empty();
  for (const auto& rel : src.relations) {
    EdgePath a = apply(f, rel.lhs, dst.graph), b = apply(f, rel.rhs, dst.graph);
    if (r.relations_verified && a != b) {
      r.relations_ok = false;
      r.problems.push_back("relation " + to_string(rel.lhs, src.graph) + " = " + to_string(rel.rhs, src.graph) +
                           " is not preserved");
    }
  }
  return r;
}

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

std::string fresh_name(std::string name, const std::vector<std::string>& taken) {
  while (std::find(taken.begin(), taken.end(), name) != taken.end()) name += "'";
  return name;
}

}  // namespace

std::vector<int> components(const DirectedGraph& g) {
  std::vector<int> parent(g.objects.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& e : g.edges) parent[find_root(parent, e.source)] = find_root(parent, e.target);
  std::map<int, int> label;
  std::vector<int> out(g.objects.size());
  for (std::size_t o = 0; o < g.objects.size(); ++o) {
    int r = find_root(parent, static_cast<int>(o));
    out[o] = label.emplace(r, static_cast<int>(label.size())).first->second;
  }
  return out;
}

GroupoidPresentation pushout(const GroupoidPresentation& w, const GroupoidPresentation& u,
                             const GroupoidPresentation& v, const GroupoidMorphism& i, const GroupoidMorphism& j) {
  for (const auto* f : {&i, &j}) {
    const auto& dst = f == &i ? u : v;
    auto rep = check_morphism(w, dst, *f);
    if (!rep.endpoints_ok) fail(Errc::precondition_failed, "pushout leg is not a morphism: " + rep.problems.front());
  }
  // every component of U and V must contain an image of a W object
  for (const auto* side : {&u, &v}) {
    const auto& f = side == &u ? i : j;
    auto comp = components(side->graph);
    std::vector<char> hit(side->graph.objects.size(), 0);
    for (int o : f.object_map) hit[comp[o]] = 1;
    for (std::size_t o = 0; o < side->graph.objects.size(); ++o)
      if (!hit[comp[o]])
        fail(Errc::precondition_failed, "object " + side->graph.objects[o] + " is not reachable from the glued objects");
  }
  const int nu = static_cast<int>(u.graph.objects.size()), nv = static_cast<int>(v.graph.objects.size());
  std::vector<int> parent(nu + nv);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t o = 0; o < w.graph.objects.size(); ++o) {
    int a = find_root(parent, i.object_map[o]), b = find_root(parent, nu + j.object_map[o]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  GroupoidPresentation out;
  std::vector<int> object_of(nu + nv, -1);
  for (int x = 0; x < nu + nv; ++x) {
    int r = find_root(parent, x);
    if (object_of[r] < 0) {
      const std::string& name = x < nu ? u.graph.objects[x] : v.graph.objects[x - nu];
      object_of[r] = out.graph.add_object(fresh_name(name, out.graph.objects));
    }
    object_of[x] = object_of[r];
  }
  std::vector<std::string> taken;
  auto copy_edges = [&](const DirectedGraph& g, int offset) {
    std::vector<int> map;
    for (const auto& e : g.edges) {
      std::string name = fresh_name(e.name, taken);
      taken.push_back(name);
      map.push_back(out.graph.add_edge(name, object_of[offset + e.source], object_of[offset + e.target]));
    }
    return map;
  };
  auto u_edges = copy_edges(u.graph, 0);
  auto v_edges = copy_edges(v.graph, nu);
  auto transport = [&](const EdgePath& p, const std::vector<int>& emap, int offset) {
    EdgePath q{object_of[offset + p.start], {}};
    for (const Letter& l : p.letters) q.letters.push_back({emap[l.gen], l.sign});
    return q;
  };
  for (const auto& r : u.relations) out.relations.push_back({transport(r.lhs, u_edges, 0), transport(r.rhs, u_edges, 0)});
  for (const auto& r : v.relations)
    out.relations.push_back({transport(r.lhs, v_edges, nu), transport(r.rhs, v_edges, nu)});
  for (std::size_t e = 0; e < w.graph.edges.size(); ++e)
    out.relations.push_back({transport(i.edge_map[e], u_edges, 0), transport(j.edge_map[e], v_edges, nu)});
  validate(out);
  return out;
}

std::vector<int> maximal_tree(const DirectedGraph& g, const std::vector<int>& preference) {
  std::vector<int> order = preference;
  if (order.empty()) {
    order.resize(g.edges.size());
    std::iota(order.begin(), order.end(), 0);
  }
  std::vector<int> parent(g.objects.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> tree;
  for (int e : order) {
    int a = find_root(parent, g.edges[e].source), b = find_root(parent, g.edges[e].target);
    if (a == b) continue;
    parent[a] = b;
    tree.push_back(e);
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

FreeWord VertexGroup::loop_word(const EdgePath& p) const {
  std::vector<Letter> out;
  for (const Letter& l : p.letters)
    if (edge_generator[l.gen] >= 0) out.push_back({edge_generator[l.gen], l.sign});
  return FreeWord(std::move(out));
}

VertexGroup vertex_group_data(const GroupoidPresentation& p, int base, const std::vector<int>& tree) {
  const auto& g = p.graph;
  if (base < 0 || base >= static_cast<int>(g.objects.size())) fail(Errc::object_not_found, "base object not found");
  auto comp = components(g);
  VertexGroup vg;
  vg.base = base;
  vg.in_component.assign(g.objects.size(), 0);
  for (std::size_t o = 0; o < g.objects.size(); ++o) vg.in_component[o] = comp[o] == comp[base];
  std::vector<char> is_tree(g.edges.size(), 0);
  for (int e : tree) is_tree[e] = 1;
  // tree paths by breadth-first search from the base
  vg.tree_path.assign(g.objects.size(), EdgePath{});
  std::vector<char> seen(g.objects.size(), 0);
  seen[base] = 1;
  vg.tree_path[base] = {base, {}};
  std::deque<int> queue{base};
  while (!queue.empty()) {
    int o = queue.front();
    queue.pop_front();
    for (int e : tree)
      for (int sign : {1, -1}) {
        Letter l{e, sign};
        if (g.letter_source(l) != o || seen[g.letter_target(l)]) continue;
        int t = g.letter_target(l);
        seen[t] = 1;
        vg.tree_path[t] = concat(vg.tree_path[o], {o, {l}}, g);
        queue.push_back(t);
      }
  }
  int comp_edges = 0;
  for (std::size_t o = 0; o < g.objects.size(); ++o)
    if (vg.in_component[o] && !seen[o]) fail(Errc::precondition_failed, "tree does not span the component of the base");
  for (int e : tree) {
    if (!vg.in_component[g.edges[e].source]) continue;
    ++comp_edges;
  }
  int comp_objects = static_cast<int>(std::count(vg.in_component.begin(), vg.in_component.end(), 1));
  if (comp_edges != comp_objects - 1) fail(Errc::precondition_failed, "edge set is not a tree on the component");
  vg.edge_generator.assign(g.edges.size(), -1);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (is_tree[e] || !vg.in_component[g.edges[e].source]) continue;
    vg.edge_generator[e] = static_cast<int>(vg.presentation.generators.size());
    vg.presentation.generators.push_back(g.edges[e].name);
  }
  for (const auto& r : p.relations) {
    if (!vg.in_component[r.lhs.start]) continue;
    FreeWord word = vg.loop_word(r.lhs) * vg.loop_word(r.rhs).inverse();
    if (!word.is_identity()) vg.presentation.relators.push_back(word);
  }
  return vg;
}

GroupPresentation vertex_group(const GroupoidPresentation& p, const std::string& object, const std::vector<int>& tree) {
  int base = p.graph.object_index(object);
  if (base < 0) fail(Errc::object_not_found, "object '" + object + "' not found");
  return vertex_group_data(p, base, tree).presentation;
}

}  // namespace xkit
