#include "xkit/cube.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "xkit/error.hpp"
#include "xkit/parse.hpp"

namespace xkit {

int CubeCell::dimension() const { return static_cast<int>(std::count(spec.begin(), spec.end(), '*')); }

CubeCell cube_cell(std::string_view spec) {
  if (spec.empty() || spec.find_first_not_of("01*") != std::string_view::npos)
    fail(Errc::parse, "cube cell must be a word over 0, 1, *: '" + std::string(spec) + "'");
  return CubeCell{std::string(spec)};
}

std::vector<CubeCell> faces(const CubeCell& c) {
  std::vector<CubeCell> out;
  for (std::size_t i = 0; i < c.spec.size(); ++i)
    if (c.spec[i] == '*')
      for (char v : {'0', '1'}) {
        CubeCell f = c;
        f.spec[i] = v;
        out.push_back(f);
      }
  return out;
}

bool is_subcell(const CubeCell& b, const CubeCell& a) {
  if (a.spec.size() != b.spec.size()) return false;
  for (std::size_t i = 0; i < a.spec.size(); ++i)
    if (a.spec[i] != '*' && a.spec[i] != b.spec[i]) return false;
  return true;
}

bool is_face_of(const CubeCell& b, const CubeCell& a) { return b.dimension() + 1 == a.dimension() && is_subcell(b, a); }

bool opposite(const CubeCell& x, const CubeCell& y) {
  if (x.spec.size() != y.spec.size()) return false;
  for (std::size_t i = 0; i < x.spec.size(); ++i)
    if (x.spec[i] != '*' && y.spec[i] != '*' && x.spec[i] != y.spec[i]) return true;
  return false;
}

bool CubeComplex::is_closed() const {
  for (const auto& c : cells)
    for (const auto& f : faces(c))
      if (!contains(f)) return false;
  return true;
}

namespace {

void check_ambient(int n, int cap) {
  if (n < 1) fail(Errc::precondition_failed, "cube dimension must be at least 1");
  if (n > cap) fail(Errc::precondition_failed, "cube dimension " + std::to_string(n) + " exceeds the cap " + std::to_string(cap));
}

std::vector<CubeCell> all_cells(int n) {
  std::vector<CubeCell> out{CubeCell{""}};
  for (int i = 0; i < n; ++i) {
    std::vector<CubeCell> next;
    for (const auto& c : out)
      for (char v : {'0', '1', '*'}) next.push_back(CubeCell{c.spec + v});
    out = std::move(next);
  }
  return out;
}

// Highest dimension first, then lexicographic.
void sort_top_down(std::vector<CubeCell>& cells) {
  std::sort(cells.begin(), cells.end(), [](const CubeCell& a, const CubeCell& b) {
    return a.dimension() != b.dimension() ? a.dimension() > b.dimension() : a.spec < b.spec;
  });
}

std::set<CubeCell> subcells(const CubeCell& a) {
  std::set<CubeCell> out{a};
  std::vector<CubeCell> todo{a};
  while (!todo.empty()) {
    CubeCell c = todo.back();
    todo.pop_back();
    for (const auto& f : faces(c))
      if (out.insert(f).second) todo.push_back(f);
  }
  return out;
}

std::set<CubeCell> closure_of(const std::set<CubeCell>& gens) {
  std::set<CubeCell> out;
  for (const auto& g : gens) {
    auto s = subcells(g);
    out.insert(s.begin(), s.end());
  }
  return out;
}

CubeCell opposite_face(const CubeCell& cell, const CubeCell& face) {
  CubeCell out = face;
  for (std::size_t i = 0; i < cell.spec.size(); ++i)
    if (cell.spec[i] == '*' && face.spec[i] != '*') out.spec[i] = face.spec[i] == '0' ? '1' : '0';
  return out;
}

// First generator whose opposite is absent; empty when there is none.
std::optional<CubeCell> find_base(const CubeCell& cell, const std::set<CubeCell>& gens) {
  for (const auto& g : gens)
    if (!gens.count(opposite_face(cell, g))) return g;
  return std::nullopt;
}

// Codimension-one faces of a lying in the closure of s, when closure(s) meets a in a
// partial box of a.
std::optional<std::set<CubeCell>> trace(const CubeCell& a, const std::set<CubeCell>& closed) {
  std::set<CubeCell> meet;
  for (const auto& c : subcells(a))
    if (closed.count(c)) meet.insert(c);
  std::set<CubeCell> gens;
  for (const auto& f : faces(a))
    if (meet.count(f)) gens.insert(f);
  if (gens.empty() || closure_of(gens) != meet || !find_base(a, gens)) return std::nullopt;
  return gens;
}

std::string render(const std::set<CubeCell>& cells) {
  std::string s = "{";
  for (const auto& c : cells) s += (s.size() > 1 ? "," : "") + c.spec;
  return s + "}";
}

}  // namespace

CubeComplex full_cube(int n, int cap) {
  check_ambient(n, cap);
  CubeComplex out{n, {}};
  for (auto& c : all_cells(n)) out.cells.insert(std::move(c));
  return out;
}

CubeComplex closure(int n, const std::vector<CubeCell>& generators) {
  for (const auto& g : generators)
    if (g.ambient() != n) fail(Errc::precondition_failed, "cell " + g.spec + " is not in I^" + std::to_string(n));
  return CubeComplex{n, closure_of(std::set<CubeCell>(generators.begin(), generators.end()))};
}

CubeComplex parse_cube_complex(std::string_view text) {
  CubeComplex out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    CubeCell c = cube_cell(line);
    if (out.cells.empty()) out.n = c.ambient();
    else if (c.ambient() != out.n) fail(Errc::parse, "cells of different lengths");
    out.cells.insert(c);
  }
  if (out.cells.empty()) fail(Errc::parse, "empty cube complex");
  return out;
}

std::string to_text(const CubeComplex& c) {
  std::vector<CubeCell> cells(c.cells.begin(), c.cells.end());
  sort_top_down(cells);
  std::string out;
  for (const auto& cell : cells) out += cell.spec + "\n";
  return out;
}

CubeComplex elementary_collapse(const CubeComplex& b, const CubeCell& a, const CubeCell& free_face) {
  if (!b.contains(a)) fail(Errc::not_face, "cell " + a.spec + " is not in the complex");
  if (a.dimension() < 1) fail(Errc::not_face, "cannot collapse the vertex " + a.spec);
  if (!is_face_of(free_face, a)) fail(Errc::not_face, free_face.spec + " is not a face of " + a.spec);
  if (!b.contains(free_face)) fail(Errc::not_face, "face " + free_face.spec + " is not in the complex");
  for (const auto& c : b.cells)
    if (c != a && c != free_face && is_subcell(free_face, c))
      fail(Errc::not_free, free_face.spec + " is also a face of " + c.spec);
  CubeComplex out = b;
  out.cells.erase(a);
  out.cells.erase(free_face);
  return out;
}

CubeComplex replay(const CubeComplex& start, const std::vector<CollapseStep>& steps) {
  CubeComplex c = start;
  for (const auto& s : steps) c = elementary_collapse(c, s.cell, s.free_face);
  return c;
}

std::vector<CollapseStep> parse_certificate(std::string_view text) {
  std::vector<CollapseStep> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string a, b, extra;
    if (!(words >> a)) continue;
    if (!(words >> b) || (words >> extra)) fail(Errc::parse, "certificate lines are 'cell face': " + line);
    out.push_back({cube_cell(a), cube_cell(b)});
  }
  return out;
}

std::string to_text(const std::vector<CollapseStep>& steps) {
  std::string out;
  for (const auto& s : steps) out += s.cell.spec + " " + s.free_face.spec + "\n";
  return out;
}

std::vector<CollapseStep> collapse_to_vertex(int n, const CubeCell& vertex, int cap) {
  check_ambient(n, cap);
  if (vertex.ambient() != n || vertex.dimension() != 0) fail(Errc::precondition_failed, "target must be a vertex of I^" + std::to_string(n));
  std::vector<CollapseStep> out;
  for (int i = 0; i < n; ++i) {
    std::string prefix = vertex.spec.substr(0, i);
    char far = vertex.spec[i] == '0' ? '1' : '0';
    auto rest = all_cells(n - i - 1);
    sort_top_down(rest);
    for (const auto& x : rest) out.push_back({CubeCell{prefix + '*' + x.spec}, CubeCell{prefix + far + x.spec}});
  }
  return out;
}

CubeComplex cylinder_complex(const CubeComplex& b) {
  CubeComplex out{b.n + 1, {}};
  for (const auto& x : b.cells)
    for (char v : {'0', '1', '*'}) out.cells.insert(CubeCell{x.spec + v});
  return out;
}

namespace {

void check_pair(const CubeComplex& b, const CubeComplex& c) {
  if (b.n != c.n) fail(Errc::not_subcomplex, "complexes live in different cubes");
  if (!b.is_closed() || !c.is_closed()) fail(Errc::not_subcomplex, "complexes must be closed under faces");
  for (const auto& x : c.cells)
    if (!b.contains(x)) fail(Errc::not_subcomplex, "cell " + x.spec + " of C is not in B");
}

}  // namespace

CubeComplex product_collapse_target(const CubeComplex& b, const CubeComplex& c) {
  check_pair(b, c);
  CubeComplex out{b.n + 1, {}};
  for (const auto& x : b.cells) out.cells.insert(CubeCell{x.spec + '0'});
  for (const auto& x : c.cells)
    for (char v : {'1', '*'}) out.cells.insert(CubeCell{x.spec + v});
  return out;
}

std::vector<CollapseStep> product_collapse(const CubeComplex& b, const CubeComplex& c) {
  check_pair(b, c);
  std::vector<CubeCell> rest;
  for (const auto& x : b.cells)
    if (!c.contains(x)) rest.push_back(x);
  sort_top_down(rest);
  std::vector<CollapseStep> out;
  for (const auto& x : rest) out.push_back({CubeCell{x.spec + '*'}, CubeCell{x.spec + '1'}});
  return out;
}

std::set<CubeCell> PartialBox::generators() const {
  std::set<CubeCell> out(sides.begin(), sides.end());
  out.insert(base);
  return out;
}

CubeComplex PartialBox::complex() const { return CubeComplex{cell.ambient(), closure_of(generators())}; }

bool PartialBox::is_box() const { return static_cast<int>(generators().size()) == 2 * cell.dimension() - 1; }

PartialBox make_partial_box(const CubeCell& cell, const CubeCell& base, const std::vector<CubeCell>& sides) {
  if (cell.dimension() < 1) fail(Errc::not_partial_box, "a partial box needs a cell of dimension >= 1");
  std::set<CubeCell> seen{base};
  if (!is_face_of(base, cell)) fail(Errc::not_face, base.spec + " is not a face of " + cell.spec);
  for (const auto& s : sides) {
    if (!is_face_of(s, cell)) fail(Errc::not_face, s.spec + " is not a face of " + cell.spec);
    if (!seen.insert(s).second) fail(Errc::not_partial_box, "face " + s.spec + " listed twice");
    if (opposite(s, base)) fail(Errc::not_partial_box, "side " + s.spec + " is opposite the base " + base.spec);
  }
  return PartialBox{cell, base, sides};
}

PartialBox partial_box_on(const CubeCell& cell, const std::set<CubeCell>& generators) {
  auto base = find_base(cell, generators);
  if (!base) fail(Errc::not_partial_box, "no face of " + render(generators) + " can serve as base");
  std::vector<CubeCell> sides;
  for (const auto& g : generators)
    if (g != *base) sides.push_back(g);
  return make_partial_box(cell, *base, sides);
}

bool is_partial_box(const CubeCell& cell, const CubeComplex& c) {
  std::set<CubeCell> gens;
  for (const auto& f : faces(cell))
    if (c.contains(f)) gens.insert(f);
  return !gens.empty() && find_base(cell, gens) && closure_of(gens) == c.cells;
}

std::vector<CollapseStep> collapse_onto(const PartialBox& p) {
  std::vector<CollapseStep> out;
  CubeCell far = opposite_face(p.cell, p.base);
  out.push_back({p.cell, far});
  std::vector<CubeCell> sides;
  for (const auto& f : faces(p.cell))
    if (f != far && f != p.base) sides.push_back(f);
  BoxChain chain = box_chain(PartialBox{p.cell, p.base, sides}, p);
  for (std::size_t i = chain.collapses.size(); i-- > 0;)
    out.insert(out.end(), chain.collapses[i].begin(), chain.collapses[i].end());
  return out;
}

BoxChain box_chain(const PartialBox& outer, const PartialBox& inner) {
  if (outer.cell != inner.cell) fail(Errc::not_contained, "partial boxes lie in different cells");
  make_partial_box(outer.cell, outer.base, outer.sides);
  make_partial_box(inner.cell, inner.base, inner.sides);
  const CubeCell& cell = outer.cell;
  const auto target = outer.generators();
  const auto start = inner.generators();
  for (const auto& g : start)
    if (!target.count(g)) fail(Errc::not_contained, "face " + g.spec + " of the inner box is not in the outer box");
  std::vector<CubeCell> pending;
  for (const auto& g : target)
    if (!start.count(g)) pending.push_back(g);
  std::set<std::set<CubeCell>> dead;
  std::vector<std::pair<CubeCell, std::set<CubeCell>>> steps;  // added face and its trace
  std::function<bool(const std::set<CubeCell>&)> search = [&](const std::set<CubeCell>& current) {
    if (current.size() == target.size()) return true;
    if (dead.count(current)) return false;
    auto closed = closure_of(current);
    for (const auto& a : pending) {
      if (current.count(a)) continue;
      auto next = current;
      next.insert(a);
      if (!find_base(cell, next)) continue;
      auto t = trace(a, closed);
      if (!t) continue;
      steps.push_back({a, *t});
      if (search(next)) return true;
      steps.pop_back();
    }
    dead.insert(current);
    return false;
  };
  if (!search(start)) fail(Errc::not_partial_box, "no chain of partial boxes from " + render(start) + " to " + render(target));
  BoxChain out;
  out.boxes.push_back(inner);
  auto current = start;
  for (const auto& [a, t] : steps) {
    current.insert(a);
    out.boxes.push_back(current == target ? outer : partial_box_on(cell, current));
    out.added.push_back(a);
    out.collapses.push_back(collapse_onto(partial_box_on(a, t)));
  }
  return out;
}

ChainCheck verify_box_chain(const BoxChain& chain) {
  ChainCheck out;
  auto problem = [&](const std::string& s) {
    out.ok = false;
    out.problems.push_back(s);
  };
  if (chain.boxes.empty() || chain.added.size() + 1 != chain.boxes.size() || chain.collapses.size() != chain.added.size()) {
    problem("chain has inconsistent lengths");
    return out;
  }
  const CubeCell& cell = chain.boxes.front().cell;
  for (const auto& b : chain.boxes)
    if (b.cell != cell || !is_partial_box(cell, b.complex())) problem("a link is not a partial box in " + cell.spec);
  for (std::size_t i = 0; i < chain.added.size(); ++i) {
    const auto& a = chain.added[i];
    auto small = chain.boxes[i].complex();
    auto big = chain.boxes[i + 1].complex();
    auto expected = chain.boxes[i].generators();
    if (expected.count(a) || !is_face_of(a, cell)) problem("step " + std::to_string(i) + " does not add a new face");
    expected.insert(a);
    if (expected != chain.boxes[i + 1].generators()) problem("step " + std::to_string(i) + " adds more than " + a.spec);
    CubeComplex meet{cell.ambient(), {}};
    for (const auto& c : subcells(a))
      if (small.contains(c)) meet.cells.insert(c);
    if (a.dimension() >= 1 && !is_partial_box(a, meet)) problem("trace on " + a.spec + " is not a partial box");
    try {
      if (replay(big, chain.collapses[i]) != small) problem("collapse at step " + std::to_string(i) + " ends elsewhere");
    } catch (const Error& e) {
      problem("collapse at step " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

int Subdivision::part_index(const std::vector<int>& r) const {
  if (r.size() != m.size()) return -1;
  int idx = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (r[i] < 1 || r[i] > m[i]) return -1;
    idx = idx * m[i] + (r[i] - 1);
  }
  return idx;
}

Subdivision subdivide(const std::vector<int>& m) {
  if (m.empty()) fail(Errc::precondition_failed, "subdivision type needs at least one coordinate");
  for (int v : m)
    if (v < 1) fail(Errc::precondition_failed, "subdivision counts must be positive");
  Subdivision s{m, {}};
  std::vector<int> r(m.size(), 1);
  while (true) {
    SubdivisionPart p{r, {}};
    for (int v : r) p.domain.push_back({v - 1, v});
    s.parts.push_back(p);
    std::size_t i = m.size();
    while (i-- > 0) {
      if (r[i] < m[i]) {
        ++r[i];
        break;
      }
      r[i] = 1;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return s;
}

std::vector<SharedFace> shared_faces(const Subdivision& s) {
  std::vector<SharedFace> out;
  for (std::size_t k = 0; k < s.parts.size(); ++k)
    for (std::size_t i = 0; i < s.m.size(); ++i) {
      auto r = s.parts[k].index;
      if (r[i] == s.m[i]) continue;
      int pos = r[i];
      ++r[i];
      out.push_back({static_cast<int>(k), s.part_index(r), static_cast<int>(i), pos});
    }
  return out;
}

std::string to_string(const SubdivisionPart& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.index.size(); ++i) s += (i ? "," : "") + std::to_string(p.index[i]);
  return s + ")";
}

std::size_t compose_check(const Subdivision& s, const FaceLabels& labels) {
  if (labels.size() != s.parts.size()) fail(Errc::precondition_failed, "one label row per part is needed");
  for (const auto& row : labels)
    if (row.size() != 2 * s.m.size()) fail(Errc::precondition_failed, "each part needs two labels per direction");
  std::size_t checked = 0;
  for (const auto& f : shared_faces(s)) {
    const auto& hi = labels[f.lower][2 * f.direction + 1];
    const auto& lo = labels[f.upper][2 * f.direction];
    ++checked;
    if (hi != lo)
      fail(Errc::incidence_mismatch, "parts " + to_string(s.parts[f.lower]) + " and " + to_string(s.parts[f.upper]) +
                                         " disagree on x" + std::to_string(f.direction + 1) + " = " + std::to_string(f.position) +
                                         ": '" + hi + "' vs '" + lo + "'");
  }
  return checked;
}

}  // namespace xkit
