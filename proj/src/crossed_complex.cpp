#include "xkit/crossed_complex.hpp"

#include <algorithm>
#include <map>

#include "xkit/complex_eval.hpp"
#include "xkit/enumerate.hpp"
#include "xkit/error.hpp"

namespace xkit {

const CellLevel& CrossedComplex::level(int degree) const {
  static const CellLevel empty;
  if (degree < 2 || degree - 2 >= static_cast<int>(levels.size())) return empty;
  return levels[degree - 2];
}

CellLevel& CrossedComplex::grow_level(int degree) {
  if (degree < 2) fail(Errc::precondition_failed, "cell levels start in degree 2");
  if (static_cast<int>(levels.size()) < degree - 1) levels.resize(degree - 1);
  return levels[degree - 2];
}

std::size_t CrossedComplex::generator_count(int degree) const {
  if (degree == 0) return c1.graph.objects.size();
  if (degree == 1) return c1.graph.edges.size();
  return level(degree).generators.size();
}

int CrossedComplex::generator_index(int degree, const std::string& name) const {
  if (degree == 0) return c1.graph.object_index(name);
  if (degree == 1) return c1.graph.edge_index(name);
  const auto& gens = level(degree).generators;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return static_cast<int>(i);
  return -1;
}

Chain zero_chain(int object) { return Chain{object, {}}; }

Chain generator_chain(const CrossedComplex& c, int degree, int gen) {
  return Chain{c.base(degree, gen), {{gen, 1, EdgePath{c.base(degree, gen), {}}}}};
}

Chain add(const Chain& a, const Chain& b) {
  if (a.object != b.object) fail(Errc::not_composable, "sum of elements at different objects");
  Chain out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

Chain negate(const Chain& a) {
  Chain out{a.object, {}};
  for (auto it = a.terms.rbegin(); it != a.terms.rend(); ++it) out.terms.push_back({it->gen, -it->coef, it->act});
  return out;
}

Chain scale(const Chain& a, std::int64_t k) {
  Chain unit = k < 0 ? negate(a) : a;
  Chain out{a.object, {}};
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out.terms.insert(out.terms.end(), unit.terms.begin(), unit.terms.end());
  return out;
}

Chain act(const Chain& a, const EdgePath& u, const DirectedGraph& g) {
  if (u.start != a.object) fail(Errc::not_composable, "acting path does not start at the element's object");
  Chain out{path_end(u, g), {}};
  for (const auto& t : a.terms) out.terms.push_back({t.gen, t.coef, concat(t.act, u, g)});
  return out;
}

EdgePath boundary2(const CrossedComplex& c, const Chain& a) {
  const auto& g = c.graph();
  EdgePath out{a.object, {}};
  for (const auto& t : a.terms) {
    const auto& gen = c.level(2).generators.at(t.gen);
    EdgePath loop = t.coef < 0 ? inverse(gen.loop, g) : gen.loop;
    EdgePath piece = inverse(t.act, g);
    for (std::int64_t i = 0; i < (t.coef < 0 ? -t.coef : t.coef); ++i) piece = concat(piece, loop, g);
    out = concat(out, concat(piece, t.act, g), g);
  }
  return out;
}

Chain boundary(const CrossedComplex& c, int degree, const Chain& a) {
  if (degree < 3) fail(Errc::precondition_failed, "chain boundary needs degree at least 3");
  Chain out = zero_chain(a.object);
  for (const auto& t : a.terms) {
    const auto& gen = c.level(degree).generators.at(t.gen);
    out = add(out, scale(act(gen.boundary, t.act, c.graph()), t.coef));
  }
  return out;
}

namespace {

std::string render_act(const EdgePath& p, const DirectedGraph& g) {
  std::string s = to_string(p, g);
  return s.find_first_of("*^") == std::string::npos ? s : "(" + s + ")";
}

}  // namespace

std::string to_string(const CrossedComplex& c, int degree, const Chain& a) {
  if (a.terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    const auto& t = a.terms[i];
    std::int64_t mag = t.coef < 0 ? -t.coef : t.coef;
    out += t.coef < 0 ? (i ? " - " : "-") : (i ? " + " : "");
    if (mag != 1) out += std::to_string(mag) + "*";
    out += c.level(degree).generators.at(t.gen).name;
    if (!t.act.is_identity()) out += "^" + render_act(t.act, c.graph());
  }
  return out;
}

Chain parse_element(const CrossedComplex& c, int degree, std::string_view text, int object_hint) {
  auto terms = parse_chain(text);
  Chain out{object_hint, {}};
  bool placed = false;
  for (const auto& t : terms) {
    int gen = c.generator_index(degree, t.gen);
    if (gen < 0) fail(Errc::parse, "no degree-" + std::to_string(degree) + " generator '" + t.gen + "'");
    EdgePath a = parse_path(t.act, c.graph(), c.base(degree, gen));
    if (a.start != c.base(degree, gen))
      fail(Errc::not_composable, "action on " + t.gen + " must start at its base object");
    int end = path_end(a, c.graph());
    if (placed && end != out.object) fail(Errc::not_composable, "terms of '" + std::string(text) + "' sit at different objects");
    out.object = end;
    placed = true;
    out.terms.push_back({gen, t.coef, a});
  }
  if (!placed && object_hint < 0) fail(Errc::parse, "zero element needs an object");
  return out;
}

namespace {

struct GeneratorLine {
  std::string name, object, boundary;
};

GeneratorLine split_generator(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) fail(Errc::parse, "generator must read name@object: boundary, got '" + text + "'");
  std::string head = trim(text.substr(0, colon));
  GeneratorLine g;
  g.boundary = trim(text.substr(colon + 1));
  auto at = head.find('@');
  g.name = trim(head.substr(0, at));
  if (at != std::string::npos) g.object = trim(head.substr(at + 1));
  if (!is_name(g.name)) fail(Errc::parse, "bad generator name '" + g.name + "'");
  return g;
}

int degree_of_key(const std::string& key, const std::string& prefix) {
  if (key.rfind(prefix, 0) != 0 || key.size() == prefix.size()) return -1;
  std::string digits = key.substr(prefix.size());
  if (!std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) return -1;
  return std::stoi(digits);
}

}  // namespace

CrossedComplex parse_complex(std::string_view text) {
  CrossedComplex c;
  std::string objects, edges, rels;
  std::map<int, std::vector<std::string>> gens, relations;
  for (const auto& [key, value] : parse_fields(text)) {
    if (key == "name") c.name = value;
    else if (key == "objects") objects += (objects.empty() ? "" : ",") + value;
    else if (key == "deg1") edges += (edges.empty() ? "" : ",") + value;
    else if (key == "rel1") rels += (rels.empty() ? "" : ",") + value;
    else if (int d = degree_of_key(key, "deg"); d >= 2) for (auto& g : split_top(value, ',')) gens[d].push_back(g);
    else if (int r = degree_of_key(key, "rel"); r >= 2) for (auto& x : split_top(value, ',')) relations[r].push_back(x);
    else fail(Errc::parse, "unknown crossed complex field '" + key + "'");
  }
  if (objects.empty()) fail(Errc::parse, "crossed complex needs an objects: line");
  std::string gtext = "objects: " + objects;
  if (!edges.empty()) gtext += "\nedges: " + edges;
  if (!rels.empty()) gtext += "\nrels: " + rels;
  c.c1 = parse_groupoid(gtext);
  int top = 1;
  for (const auto& [d, v] : gens) top = std::max(top, d);
  for (const auto& [d, v] : relations) top = std::max(top, d);
  for (int d = 2; d <= top; ++d) {
    auto& level = c.grow_level(d);
    for (const auto& line : gens[d]) {
      auto g = split_generator(line);
      if (c.generator_index(d, g.name) >= 0) fail(Errc::parse, "duplicate generator '" + g.name + "'");
      int base = 0;
      if (g.object.empty()) {
        if (c.graph().objects.size() != 1) fail(Errc::parse, "generator " + g.name + " needs @object");
      } else {
        base = c.graph().object_index(g.object);
        if (base < 0) fail(Errc::object_not_found, "no object '" + g.object + "'");
      }
      CellGenerator cell{g.name, base, EdgePath{base, {}}, zero_chain(base)};
      if (d == 2) {
        cell.loop = parse_path(parse_word(g.boundary), c.graph(), base);
        if (cell.loop.start != base || path_end(cell.loop, c.graph()) != base)
          fail(Errc::not_composable, "boundary of " + g.name + " is not a loop at " + c.graph().objects[base]);
      } else {
        cell.boundary = parse_element(c, d - 1, g.boundary, base);
        if (cell.boundary.object != base)
          fail(Errc::not_composable, "boundary of " + g.name + " does not sit at " + c.graph().objects[base]);
      }
      level.generators.push_back(std::move(cell));
    }
    for (const auto& r : relations[d]) level.relations.push_back(parse_element(c, d, r));
  }
  while (!c.levels.empty() && c.levels.back().generators.empty() && c.levels.back().relations.empty()) c.levels.pop_back();
  return c;
}

std::string to_text(const CrossedComplex& c) {
  const auto& g = c.graph();
  std::string out;
  if (!c.name.empty()) out += "name: " + c.name + "\n";
  out += "objects: ";
  for (std::size_t i = 0; i < g.objects.size(); ++i) out += (i ? ", " : "") + g.objects[i];
  out += "\n";
  for (const auto& e : g.edges) out += "deg1: " + e.name + ": " + g.objects[e.source] + "->" + g.objects[e.target] + "\n";
  for (const auto& r : c.c1.relations) out += "rel1: " + to_string(r.lhs, g) + " = " + to_string(r.rhs, g) + "\n";
  for (int d = 2; d <= c.top_degree(); ++d) {
    const auto& level = c.level(d);
    for (const auto& gen : level.generators) {
      out += "deg" + std::to_string(d) + ": " + gen.name + "@" + g.objects[gen.base] + ": ";
      out += d == 2 ? to_string(gen.loop, g) : to_string(c, d - 1, gen.boundary);
      out += "\n";
    }
    for (const auto& r : level.relations) out += "rel" + std::to_string(d) + ": " + to_string(c, d, r) + "\n";
  }
  return out;
}

GroupoidPresentation fundamental_groupoid(const CrossedComplex& c) {
  GroupoidPresentation p = c.c1;
  for (const auto& gen : c.level(2).generators) p.relations.push_back({gen.loop, EdgePath{gen.base, {}}});
  return p;
}

CrossedComplex point_complex() {
  CrossedComplex c;
  c.name = "point";
  c.c1.graph.add_object("o");
  return c;
}

CrossedComplex interval_complex() {
  CrossedComplex c;
  c.name = "I";
  c.c1.graph.add_object("0");
  c.c1.graph.add_object("1");
  c.c1.graph.add_edge("i", 0, 1);
  return c;
}

namespace {

// Exponent sum of each generator.
std::vector<std::int64_t> abelianize(const FreeWord& w, std::size_t gens) {
  std::vector<std::int64_t> out(gens, 0);
  for (const Letter& l : w.letters()) out[l.gen] += l.sign;
  return out;
}

Chain linear_chain(const std::vector<std::int64_t>& coefs, int object) {
  Chain out{object, {}};
  for (std::size_t i = 0; i < coefs.size(); ++i)
    if (coefs[i] != 0) out.terms.push_back({static_cast<int>(i), coefs[i], EdgePath{object, {}}});
  return out;
}

void one_object_c1(CrossedComplex& c, const GroupPresentation& g) {
  c.c1.graph.add_object("o");
  for (const auto& name : g.generators) c.c1.graph.add_edge(name, 0, 0);
  for (const auto& r : g.relators)
    if (!r.is_identity()) c.c1.relations.push_back({EdgePath{0, r.letters()}, EdgePath{0, {}}});
}

void add_module_generators(CrossedComplex& c, const GroupPresentation& m, int n) {
  auto& level = c.grow_level(n);
  for (const auto& name : m.generators) level.generators.push_back({name, 0, EdgePath{0, {}}, zero_chain(0)});
  for (const auto& r : m.relators) {
    auto coefs = abelianize(r, m.generators.size());
    if (std::any_of(coefs.begin(), coefs.end(), [](std::int64_t x) { return x != 0; }))
      level.relations.push_back(linear_chain(coefs, 0));
  }
}

}  // namespace

CrossedComplex from_presentation(const GroupPresentation& p) {
  CrossedComplex c;
  c.name = "presentation";
  c.c1.graph.add_object("o");
  for (const auto& name : p.generators) c.c1.graph.add_edge(name, 0, 0);
  auto& level = c.grow_level(2);
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    level.generators.push_back({"r" + std::to_string(r + 1), 0, EdgePath{0, p.relators[r].letters()}, zero_chain(0)});
  if (level.generators.empty()) c.levels.clear();
  return c;
}

CrossedComplex make_cgn(const GroupPresentation& g, int n, std::size_t bound) {
  if (n < 1) fail(Errc::precondition_failed, "C(G,n) needs n >= 1");
  CrossedComplex c;
  c.name = "C(G," + std::to_string(n) + ")";
  if (n == 1) {
    one_object_c1(c, g);
    return c;
  }
  try {
    auto e = enumerate_fp_group(g, bound);
    if (!e.group().is_abelian()) fail(Errc::precondition_failed, "C(G,n) with n >= 2 needs an abelian group");
  } catch (const Error& err) {
    if (err.code() != Errc::unbounded) throw;
    if (g.generators.size() > 1) fail(Errc::precondition_failed, "cannot confirm that the group is abelian");
  }
  c.c1.graph.add_object("o");
  add_module_generators(c, g, n);
  return c;
}

CrossedComplex make_cg1mn(const GroupPresentation& g, const GroupPresentation& m,
                          const std::vector<std::vector<FreeWord>>& action, int n, std::size_t bound) {
  if (n < 2) fail(Errc::precondition_failed, "C(G,1;M,n) needs n >= 2");
  if (action.size() != g.generators.size()) fail(Errc::precondition_failed, "action needs one row per generator of G");
  CrossedComplex c;
  c.name = "C(G,1;M," + std::to_string(n) + ")";
  one_object_c1(c, g);
  add_module_generators(c, m, n);
  auto& level = c.grow_level(n);
  bool trivial = true;
  for (std::size_t x = 0; x < action.size(); ++x) {
    if (action[x].size() != m.generators.size()) fail(Errc::precondition_failed, "action row has the wrong length");
    for (std::size_t mi = 0; mi < action[x].size(); ++mi) {
      auto image = abelianize(action[x][mi], m.generators.size());
      Chain rel{0, {{static_cast<int>(mi), 1, EdgePath{0, {{static_cast<int>(x), 1}}}}}};
      rel = add(rel, negate(linear_chain(image, 0)));
      level.relations.push_back(rel);
      std::vector<std::int64_t> unit(m.generators.size(), 0);
      unit[mi] = 1;
      trivial &= image == unit;
    }
  }
  // the presented module collapses unless the action is well defined on M
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& r : m.relators) rows.push_back(abelianize(r, m.generators.size()));
  IntMatrix m_rel(0, m.generators.size());
  for (const auto& r : rows) m_rel.append_row(r);
  auto expected = cokernel_invariants(m_rel, m.generators.size());
  ComplexEvaluator eval(c, 0, bound, trivial);
  if (!eval.pi1_finite() && !trivial) fail(Errc::precondition_failed, "cannot verify the module structure over an infinite group");
  auto presented = cokernel_invariants(eval.relation_lattice(n), m.generators.size() * eval.group().order());
  if (presented.torsion != expected.torsion || presented.free_rank != expected.free_rank)
    fail(Errc::precondition_failed, "the action does not make M a G-module (presented module is " +
                                        to_string(presented) + ", expected " + to_string(expected) + ")");
  return c;
}

}  // namespace xkit
