#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "xkit/acceptance.hpp"
#include "xkit/catalogue.hpp"
#include "xkit/complex_eval.hpp"
#include "xkit/crossed_module.hpp"
#include "xkit/cube.hpp"
#include "xkit/double_groupoid.hpp"
#include "xkit/enumerate.hpp"
#include "xkit/error.hpp"
#include "xkit/fox.hpp"
#include "xkit/free_crossed_module.hpp"
#include "xkit/tensor.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace xkit;

namespace {

enum Exit { kOk = 0, kViolation = 1, kInputError = 2, kBoundHit = 3 };

struct Reply {
  json data = json::object();
  std::ostringstream text;
  int code = kOk;
};

int exit_code(Errc code) {
  switch (code) {
    case Errc::unbounded:
    case Errc::infinite_carrier:
    case Errc::overflow:
      return kBoundHit;
    case Errc::parse:
    case Errc::object_not_found:
    case Errc::malformed_shell:
    case Errc::unknown_suite:
    case Errc::not_composable:
    case Errc::not_subcomplex:
    case Errc::not_contained:
      return kInputError;
    default:
      return kViolation;
  }
}

// A path as given, next to `near`, or in the catalogue.
std::string resolve(const std::string& arg, const std::string& near = "") {
  if (fs::exists(arg)) return arg;
  if (!near.empty()) {
    const auto sibling = fs::path(near).parent_path() / arg;
    if (fs::exists(sibling)) return sibling.string();
  }
  if (fs::exists(catalogue_path(arg))) return catalogue_path(arg);
  return arg;
}

std::string load(const std::string& arg, const std::string& near = "") { return read_text_file(resolve(arg, near)); }

// A file name or the presentation text itself.
GroupPresentation load_presentation(const std::string& arg) {
  const auto path = resolve(arg);
  return parse_presentation(fs::exists(path) ? read_text_file(path) : arg);
}

GroupoidPresentation load_groupoid(const std::string& arg) {
  const auto text = load(arg);
  return looks_like_pushout(text) ? glue(parse_pushout(text)) : parse_groupoid(text);
}

CrossedModule load_crossed_module(const std::string& arg, std::size_t bound, const std::string& near = "") {
  return realize(parse_crossed_module(load(arg, near)), bound);
}

CubeComplex load_cube(const std::string& arg) {
  const auto listed = parse_cube_complex(load(arg));
  return closure(listed.n, {listed.cells.begin(), listed.cells.end()});
}

std::vector<std::string> labels_of(const std::vector<ZG>& row, const FiniteGroup& g) {
  std::vector<std::string> out;
  for (const auto& x : row) out.push_back(to_string(x, g.labels()));
  return out;
}

std::string joined(const std::vector<std::string>& items, const std::string& sep = ", ") {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
  return out;
}

std::vector<CubeCell> cells_of(const std::string& list) {
  std::vector<CubeCell> out;
  for (const auto& s : split_top(list, ',')) out.push_back(cube_cell(trim(s)));
  return out;
}

// group

Reply group_enum(const std::string& pres, std::size_t bound) {
  Reply r;
  const auto g = enumerate_fp_group(load_presentation(pres), bound);
  const auto& G = g.group();
  r.data["order"] = G.order();
  r.data["abelian"] = G.is_abelian();
  r.data["elements"] = G.labels();
  r.data["element_orders"] = element_order_profile(G);
  r.text << "order " << G.order() << (G.is_abelian() ? ", abelian" : "") << "\n";
  r.text << "elements: " << joined(G.labels()) << "\n";
  return r;
}

IntMatrix parse_matrix(const std::string& text, std::size_t& cols) {
  std::vector<std::vector<std::int64_t>> rows;
  std::string normalized = text;
  for (char& ch : normalized)
    if (ch == ';') ch = '\n';
    else if (ch == ',') ch = ' ';
  std::istringstream in(normalized);
  std::string line;
  cols = 0;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream items(line);
    std::vector<std::int64_t> row;
    std::string item;
    while (items >> item) {
      try {
        std::size_t used = 0;
        row.push_back(std::stoll(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::logic_error&) {
        fail(Errc::parse, "'" + item + "' is not an integer");
      }
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != cols) fail(Errc::parse, "rows of different lengths");
    cols = row.size();
    rows.push_back(row);
  }
  return IntMatrix::from_rows(rows, cols);
}

Reply group_snf(const std::string& matrix) {
  Reply r;
  std::size_t cols = 0;
  const auto path = resolve(matrix);
  const auto m = parse_matrix(fs::exists(path) ? read_text_file(path) : matrix, cols);
  const auto diagonal = smith_diagonal(m);
  const auto coker = cokernel_invariants(m, cols);
  r.data["diagonal"] = diagonal;
  r.data["cokernel"] = {{"free_rank", coker.free_rank}, {"torsion", coker.torsion}, {"text", to_string(coker)}};
  std::vector<std::string> d;
  for (auto x : diagonal) d.push_back(std::to_string(x));
  r.text << "diagonal: " << joined(d, " ") << "\ncokernel: " << to_string(coker) << "\n";
  return r;
}

// gpd

json vertex_group_json(const GroupoidPresentation& g, const std::string& object, std::size_t bound, Reply& r) {
  const auto pi = vertex_group(g, object, maximal_tree(g.graph));
  const auto description = describe_group(pi, bound);
  r.text << "vertex group at " << object << ": " << description << "\n  " << to_text(pi) << "\n";
  return {{"object", object}, {"presentation", to_text(pi)}, {"description", description}};
}

Reply gpd_pushout(const std::string& file, std::size_t bound) {
  Reply r;
  const auto text = load(file);
  if (!looks_like_pushout(text)) fail(Errc::parse, file + " does not describe a pushout");
  const auto spec = parse_pushout(text);
  const auto glued = glue(spec);
  r.data["name"] = spec.name;
  r.data["groupoid"] = to_text(glued);
  r.text << to_text(glued) << "\n";
  r.data["vertex_groups"] = json::array();
  for (const auto& object : glued.graph.objects) r.data["vertex_groups"].push_back(vertex_group_json(glued, object, bound, r));
  return r;
}

Reply gpd_vertex_group(const std::string& file, const std::string& object, std::size_t bound) {
  Reply r;
  const auto g = load_groupoid(file);
  const auto name = object.empty() ? g.graph.objects.at(0) : object;
  if (g.graph.object_index(name) < 0) fail(Errc::object_not_found, "no object '" + name + "'");
  r.data = vertex_group_json(g, name, bound, r);
  return r;
}

// xmod

Reply xmod_validate(const std::string& file, std::size_t bound) {
  Reply r;
  const auto x = load_crossed_module(file, bound);
  const auto report = validate(x);
  r.data = {{"name", x.name},        {"order_M", x.M.order()},     {"order_P", x.P.order()},
            {"mu_hom", report.mu_hom_ok}, {"action", report.action_ok}, {"CM1", report.cm1_ok},
            {"CM2", report.cm2_ok},  {"counterexamples", report.counterexamples}, {"ok", report.ok()}};
  r.text << x.name << ": |M| = " << x.M.order() << ", |P| = " << x.P.order() << "\n";
  r.text << "mu homomorphism " << (report.mu_hom_ok ? "ok" : "FAILS") << "\naction " << (report.action_ok ? "ok" : "FAILS")
         << "\nCM1 " << (report.cm1_ok ? "ok" : "FAILS") << "\nCM2 " << (report.cm2_ok ? "ok" : "FAILS") << "\n";
  for (const auto& c : report.counterexamples) r.text << "  " << c << "\n";
  r.code = report.ok() ? kOk : kViolation;
  return r;
}

Reply xmod_consequences(const std::string& file, std::size_t bound) {
  Reply r;
  const auto x = load_crossed_module(file, bound);
  const bool valid = validate(x).ok();
  const auto c = consequences(x);
  r.data = {{"name", x.name},
            {"valid", valid},
            {"im_normal", c.im_normal},
            {"ker_central", c.ker_central},
            {"ker_fixed_by_im", c.ker_fixed_by_im}};
  r.text << x.name << (valid ? "" : " (fails the axioms)") << "\nIm mu normal in P: " << std::boolalpha << c.im_normal
         << "\nKer mu central in M: " << c.ker_central << "\nKer mu fixed by Im mu: " << c.ker_fixed_by_im << "\n";
  r.code = valid && c.im_normal && c.ker_central ? kOk : kViolation;
  return r;
}

Reply xmod_fcm_eq(const std::string& pres, const std::string& a, const std::string& b, std::size_t bound) {
  Reply r;
  const FreeCrossedModule fcm(load_presentation(pres), bound);
  const auto x = fcm.parse(a), y = fcm.parse(b);
  const bool equal = fcm.equal(x, y);
  const auto& p = fcm.presentation();
  const auto& G = fcm.quotient().group();
  r.data = {{"equal", equal},
            {"boundary", {p.render(fcm.boundary(x)), p.render(fcm.boundary(y))}},
            {"h2", {labels_of(fcm.h2(x), G), labels_of(fcm.h2(y), G)}}};
  r.text << (equal ? "equal" : "not equal") << "\n";
  r.text << "boundaries: " << p.render(fcm.boundary(x)) << " | " << p.render(fcm.boundary(y)) << "\n";
  r.text << "h2: (" << joined(labels_of(fcm.h2(x), G)) << ") | (" << joined(labels_of(fcm.h2(y), G)) << ")\n";
  return r;
}

// fox

Reply fox_deriv(const std::string& pres, const std::string& word, const std::string& by, std::size_t bound) {
  Reply r;
  const auto p = load_presentation(pres);
  const auto w = p.word(word);
  std::optional<EnumeratedGroup> g;
  try {
    g = enumerate_fp_group(p, bound);
  } catch (const Error& e) {
    if (e.code() != Errc::unbounded) throw;
  }
  r.data["word"] = p.render(w);
  r.data["derivatives"] = json::array();
  for (std::size_t x = 0; x < p.generators.size(); ++x) {
    if (!by.empty() && by != p.generators[x]) continue;
    const int xi = static_cast<int>(x);
    json d = {{"generator", p.generators[x]}, {"free", to_string(fox_derivative(w, xi), p.generators)}};
    r.text << "d/d" << p.generators[x] << ": " << d["free"].get<std::string>();
    if (g) {
      d["group_ring"] = to_string(fox_derivative(w, xi, *g), g->group().labels());
      r.text << "  =  " << d["group_ring"].get<std::string>() << " in Z[G]";
    }
    r.text << "\n";
    r.data["derivatives"].push_back(d);
  }
  if (r.data["derivatives"].empty()) fail(Errc::parse, "no generator '" + by + "'");
  return r;
}

Reply fox_jacobian_cmd(const std::string& pres, std::size_t bound) {
  Reply r;
  const auto j = fox_jacobian(load_presentation(pres), bound);
  const auto& G = j.group.group();
  const auto& p = j.presentation;
  r.data["group_order"] = G.order();
  r.data["generators"] = p.generators;
  r.data["rows"] = json::array();
  r.text << "rows: relators, columns: " << joined(p.generators) << "\n";
  for (std::size_t i = 0; i < j.matrix.size(); ++i) {
    const auto row = labels_of(j.matrix[i], G);
    r.data["rows"].push_back({{"relator", p.render(p.relators[i])}, {"entries", row}});
    r.text << p.render(p.relators[i]) << ": [" << joined(row, " | ") << "]\n";
  }
  bool zero = true;
  for (const auto& row : compose_maps(j.matrix, j.d1(), 1, G)) zero = zero && row.at(0).is_zero();
  r.data["d1d2_zero"] = zero;
  r.text << "d1 d2 = 0: " << std::boolalpha << zero << "\n";
  r.code = zero ? kOk : kViolation;
  return r;
}

Reply fox_identities(const std::string& pres, std::size_t bound) {
  Reply r;
  const auto id = identities_module(load_presentation(pres), bound);
  const auto g = enumerate_fp_group(load_presentation(pres), bound);
  json gens = json::array();
  for (const auto& v : id.kernel.generators) gens.push_back(labels_of(v, g.group()));
  r.data = {{"z_rank", id.kernel.rank},
            {"invariants", to_string(id.invariants)},
            {"jacobian_rank", id.jacobian_rank},
            {"generators", gens}};
  r.text << "identities among relations: " << to_string(id.invariants) << " as an abelian group (Z-rank "
         << id.kernel.rank << ")\n";
  for (const auto& v : id.kernel.generators) r.text << "  (" << joined(labels_of(v, g.group())) << ")\n";
  return r;
}

Reply fox_nabla(const std::string& pres, std::size_t bound) {
  Reply r;
  const auto c = nabla(load_presentation(pres), bound);
  const auto failing = c.failing_squares();
  r.data = {{"ranks", c.ranks}, {"failing_squares", failing}, {"text", to_string(c)}};
  r.text << to_string(c);
  r.code = failing.empty() ? kOk : kViolation;
  return r;
}

// crs

Reply crs_validate(const std::string& file, std::size_t bound) {
  Reply r;
  const auto c = parse_complex(load(file));
  const auto report = validate_complex(c, bound);
  r.data["name"] = c.name;
  r.data["axioms"] = json::array();
  for (const auto& a : report.axioms) {
    r.data["axioms"].push_back(
        {{"name", a.name}, {"passed", a.passed}, {"skipped", a.skipped}, {"checked", a.checked}, {"witnesses", a.witnesses}});
    r.text << (a.skipped ? "skip" : a.passed ? "ok  " : "FAIL") << "  " << a.name << " (" << a.checked << ")\n";
    for (const auto& w : a.witnesses) r.text << "      " << w << "\n";
  }
  r.data["warnings"] = report.warnings;
  for (const auto& w : report.warnings) r.text << "warning: " << w << "\n";
  r.data["ok"] = report.ok();
  r.code = report.ok() ? kOk : kViolation;
  return r;
}

int object_of(const CrossedComplex& c, const std::string& object) {
  if (object.empty()) return 0;
  const int o = c.graph().object_index(object);
  if (o < 0) fail(Errc::object_not_found, "no object '" + object + "'");
  return o;
}

Reply crs_pi1(const std::string& file, const std::string& object, std::size_t bound) {
  Reply r;
  const auto c = parse_complex(load(file));
  const auto g = fundamental_groupoid(c);
  const int o = object_of(c, object);
  r.data = vertex_group_json(g, g.graph.objects.at(o), bound, r);
  return r;
}

Reply crs_homology(const std::string& file, int degree, const std::string& object, std::size_t bound) {
  Reply r;
  const auto c = parse_complex(load(file));
  const int o = object_of(c, object);
  const int first = degree > 0 ? degree : 2, last = degree > 0 ? degree : std::max(2, c.top_degree() + 1);
  if (first < 2) fail(Errc::parse, "homology is computed in degrees >= 2");
  r.data["homology"] = json::array();
  for (int n = first; n <= last; ++n) {
    const auto h = homology(c, n, o, bound);
    r.data["homology"].push_back({{"degree", n}, {"free_rank", h.free_rank}, {"torsion", h.torsion}, {"text", to_string(h)}});
    r.text << "H" << n << " = " << to_string(h) << "\n";
  }
  return r;
}

Reply tensor_reply(const TensorComplex& t, std::size_t bound, const std::string& out) {
  Reply r;
  const auto report = check_tensor(t, bound);
  const auto text = to_text(t.complex);
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) fail(Errc::parse, "cannot write " + out);
    f << text;
  }
  r.data["complex"] = text;
  r.data["dd_checked"] = report.dd_checked;
  r.data["valid"] = report.validation.ok();
  json silent = json::array();
  for (const auto& [m, n] : report.silent) silent.push_back({m, n});
  r.data["silent_bidegrees"] = silent;
  r.text << text << "\ndd = 0 checked on " << report.dd_checked << " generators; "
         << (report.ok() ? "valid" : "NOT valid") << "\n";
  for (const auto& a : report.validation.axioms)
    if (!a.passed)
      for (const auto& w : a.witnesses) r.text << "  " << a.name << ": " << w << "\n";
  r.code = report.ok() ? kOk : kViolation;
  return r;
}

Reply crs_tensor(const std::string& a, const std::string& b, int maxdeg, const std::string& out, std::size_t bound) {
  return tensor_reply(tensor_complex(parse_complex(load(a)), parse_complex(load(b)), maxdeg), bound, out);
}

Reply crs_cylinder(const std::string& file, int maxdeg, const std::string& out, std::size_t bound) {
  return tensor_reply(cylinder(parse_complex(load(file)), maxdeg), bound, out);
}

// Homotopy file:
//   source: a.crs
//   target: b.crs
//   f: o -> o, c -> a
//   g: o -> o, c -> b^-1*a*b
//   H: o -> b, c -> 0
// f and g send objects to objects, edges to paths and cells to chains of the same degree;
// H sends objects to paths, edges to degree-2 chains and degree-n cells to degree n+1.
struct MapEntry {
  int degree = 0;
  int index = 0;
  std::string value;
};

std::vector<MapEntry> map_entries(const CrossedComplex& src, const std::string& text) {
  std::vector<MapEntry> out;
  for (const auto& item : split_top(text, ',')) {
    if (trim(item).empty()) continue;
    const auto arrow = item.find("->");
    if (arrow == std::string::npos) fail(Errc::parse, "expected 'x -> y' in '" + item + "'");
    const auto name = trim(item.substr(0, arrow));
    MapEntry e{-1, -1, trim(item.substr(arrow + 2))};
    if (int o = src.graph().object_index(name); o >= 0) e = {0, o, e.value};
    else if (int x = src.graph().edge_index(name); x >= 0) e = {1, x, e.value};
    else
      for (int d = 2; d <= src.top_degree() && e.degree < 0; ++d)
        if (int k = src.generator_index(d, name); k >= 0) e = {d, k, e.value};
    if (e.degree < 0) fail(Errc::parse, "'" + name + "' is not a basis element of the source");
    out.push_back(e);
  }
  return out;
}

int beta(const CrossedComplex& c, int degree, int index) {
  if (degree == 0) return index;
  if (degree == 1) return c.graph().edges.at(index).target;
  return c.base(degree, index);
}

ComplexMorphism parse_complex_map(const CrossedComplex& src, const CrossedComplex& dst, const std::string& text) {
  ComplexMorphism f;
  const auto entries = map_entries(src, text);
  f.objects.assign(src.graph().objects.size(), -1);
  for (const auto& e : entries)
    if (e.degree == 0) {
      f.objects[e.index] = dst.graph().object_index(e.value);
      if (f.objects[e.index] < 0) fail(Errc::object_not_found, "no object '" + e.value + "' in the target");
    }
  for (std::size_t o = 0; o < f.objects.size(); ++o)
    if (f.objects[o] < 0) fail(Errc::parse, "object '" + src.graph().objects[o] + "' is not mapped");
  f.edges.resize(src.graph().edges.size());
  for (int d = 2; d <= src.top_degree(); ++d) f.cells.emplace_back(src.generator_count(d));
  for (const auto& e : entries) {
    if (e.degree == 1) {
      f.edges[e.index] = parse_path(parse_word(e.value), dst.graph(), f.objects[src.graph().edges[e.index].source]);
    } else if (e.degree >= 2) {
      f.cells[e.degree - 2][e.index] = parse_element(dst, e.degree, e.value, f.objects[beta(src, e.degree, e.index)]);
    }
  }
  return f;
}

HomotopyData parse_homotopy(const CrossedComplex& src, const CrossedComplex& dst, const std::string& f_text,
                            const std::string& g_text, const std::string& h_text) {
  HomotopyData h;
  h.f = parse_complex_map(src, dst, f_text);
  h.g = parse_complex_map(src, dst, g_text);
  h.on_objects.resize(src.graph().objects.size());
  h.on_edges.resize(src.graph().edges.size());
  for (int d = 2; d <= src.top_degree(); ++d) h.on_cells.emplace_back(src.generator_count(d));
  std::vector<char> seen(h.on_objects.size() + h.on_edges.size(), 0);
  for (const auto& e : map_entries(src, h_text)) {
    const int at = h.g.objects.at(beta(src, e.degree, e.index));
    if (e.degree == 0) {
      h.on_objects[e.index] = parse_path(parse_word(e.value), dst.graph(), h.f.objects[e.index]);
      seen[e.index] = 1;
    } else if (e.degree == 1) {
      h.on_edges[e.index] = parse_element(dst, 2, e.value, at);
      seen[h.on_objects.size() + e.index] = 1;
    } else {
      h.on_cells[e.degree - 2][e.index] = parse_element(dst, e.degree + 1, e.value, at);
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    fail(Errc::parse, "H must give every object and edge of the source");
  return h;
}

Reply crs_homotopy(const std::string& file, std::size_t bound) {
  Reply r;
  const auto path = resolve(file);
  std::string source, target, f_text, g_text, h_text;
  std::istringstream in(read_text_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) fail(Errc::parse, "expected 'key: value' in '" + line + "'");
    const auto key = trim(line.substr(0, colon)), value = trim(line.substr(colon + 1));
    if (key == "source") source = value;
    else if (key == "target") target = value;
    else if (key == "f") f_text = value;
    else if (key == "g") g_text = value;
    else if (key == "H") h_text = value;
    else fail(Errc::parse, "unknown homotopy field '" + key + "'");
  }
  if (source.empty() || target.empty()) fail(Errc::parse, "a homotopy needs source and target");
  const auto src = parse_complex(load(source, path)), dst = parse_complex(load(target, path));
  const auto h = parse_homotopy(src, dst, f_text, g_text, h_text);
  const auto check = check_homotopy(src, dst, h, bound);
  r.data = {{"ok", check.ok}, {"checked", check.checked}, {"problems", check.problems}, {"skipped", check.skipped}};
  r.text << (check.ok ? "homotopy from f to g" : "NOT a homotopy") << " (" << check.checked << " checks)\n";
  for (const auto& p : check.problems) r.text << "  " << p << "\n";
  for (const auto& s : check.skipped) r.text << "  skipped: " << s << "\n";
  r.code = check.ok ? kOk : kViolation;
  return r;
}

// cube

void write_certificate(const std::vector<CollapseStep>& steps, const std::string& out) {
  if (out.empty()) return;
  std::ofstream f(out);
  if (!f) fail(Errc::parse, "cannot write " + out);
  f << to_text(steps);
}

json steps_json(const std::vector<CollapseStep>& steps) {
  json out = json::array();
  for (const auto& s : steps) out.push_back({s.cell.spec, s.free_face.spec});
  return out;
}

Reply cube_collapse(int n, const std::string& vertex, const std::string& complex_file, const std::string& certificate,
                    const std::string& out) {
  Reply r;
  if (!vertex.empty()) {
    const auto v = cube_cell(vertex);
    const int dim = n > 0 ? n : v.ambient();
    if (v.ambient() != dim || v.dimension() != 0) fail(Errc::parse, "--to-vertex needs a vertex of I^" + std::to_string(dim));
    const auto steps = collapse_to_vertex(dim, v);
    const auto end = replay(full_cube(dim), steps);
    r.data = {{"steps", steps.size()}, {"certificate", steps_json(steps)}, {"remaining", end.size()}};
    r.text << to_text(steps) << steps.size() << " steps, I^" << dim << " collapses to " << v.spec << "\n";
    write_certificate(steps, out);
    return r;
  }
  if (complex_file.empty() || certificate.empty())
    fail(Errc::parse, "give --to-vertex, or a complex file and a certificate file");
  const auto start = load_cube(complex_file);
  const auto steps = parse_certificate(load(certificate));
  const auto end = replay(start, steps);
  std::vector<std::string> cells;
  for (const auto& c : end.cells) cells.push_back(c.spec);
  r.data = {{"steps", steps.size()}, {"remaining", cells}};
  r.text << "replayed " << steps.size() << " steps; " << end.size() << " cells remain: " << joined(cells) << "\n";
  return r;
}

Reply cube_product_collapse(const std::string& b_file, const std::string& c_file, const std::string& out) {
  Reply r;
  const auto B = load_cube(b_file), C = load_cube(c_file);
  const auto steps = product_collapse(B, C);
  const bool ok = replay(cylinder_complex(B), steps) == product_collapse_target(B, C);
  r.data = {{"steps", steps.size()}, {"certificate", steps_json(steps)}, {"replay_ok", ok}};
  r.text << to_text(steps) << steps.size() << " steps, replay " << (ok ? "reaches" : "MISSES") << " B x 0 u C x I\n";
  write_certificate(steps, out);
  r.code = ok ? kOk : kViolation;
  return r;
}

Reply cube_boxchain(const std::string& cell_text, const std::string& outer, const std::string& inner) {
  Reply r;
  const auto cell = cube_cell(cell_text);
  auto box = [&](const std::string& list) {
    const auto cells = cells_of(list);
    return partial_box_on(cell, {cells.begin(), cells.end()});
  };
  const auto chain = box_chain(box(outer), box(inner));
  const auto check = verify_box_chain(chain);
  json boxes = json::array();
  for (std::size_t i = 0; i < chain.boxes.size(); ++i) {
    std::vector<std::string> gens;
    for (const auto& g : chain.boxes[i].generators()) gens.push_back(g.spec);
    json link = {{"generators", gens}};
    r.text << "box " << i << ": " << joined(gens) << "\n";
    if (i < chain.added.size()) {
      link["added"] = chain.added[i].spec;
      link["collapse"] = steps_json(chain.collapses[i]);
      r.text << "  add " << chain.added[i].spec << ", collapse back in " << chain.collapses[i].size() << " steps\n";
    }
    boxes.push_back(link);
  }
  r.data = {{"boxes", boxes}, {"ok", check.ok}, {"problems", check.problems}};
  r.text << (check.ok ? "chain verified" : "chain FAILS verification") << "\n";
  for (const auto& p : check.problems) r.text << "  " << p << "\n";
  r.code = check.ok ? kOk : kViolation;
  return r;
}

// Labels file: one line per part, "r1,r2,...: l1 l2 ..." with two labels per direction.
FaceLabels parse_labels(const Subdivision& s, const std::string& text) {
  FaceLabels labels(s.parts.size());
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) fail(Errc::parse, "expected 'index: labels' in '" + line + "'");
    std::vector<int> index;
    for (const auto& x : split_top(line.substr(0, colon), ',')) index.push_back(std::stoi(trim(x)));
    const int part = s.part_index(index);
    if (part < 0) fail(Errc::parse, "no part " + trim(line.substr(0, colon)));
    std::istringstream items(line.substr(colon + 1));
    std::string l;
    while (items >> l) labels[part].push_back(l);
    if (labels[part].size() != 2 * s.m.size()) fail(Errc::parse, "part " + trim(line.substr(0, colon)) + " needs " +
                                                                   std::to_string(2 * s.m.size()) + " labels");
  }
  for (std::size_t p = 0; p < labels.size(); ++p)
    if (labels[p].empty()) fail(Errc::parse, "part " + to_string(s.parts[p]) + " has no labels");
  return labels;
}

Reply cube_subdivide(const std::string& m_text, const std::string& labels_file) {
  Reply r;
  std::vector<int> m;
  for (const auto& x : split_top(m_text, ',')) {
    try {
      m.push_back(std::stoi(trim(x)));
    } catch (const std::logic_error&) {
      fail(Errc::parse, "'" + x + "' is not a part count");
    }
  }
  const auto s = subdivide(m);
  std::vector<std::string> parts;
  for (const auto& p : s.parts) parts.push_back(to_string(p));
  r.data["parts"] = parts;
  r.data["shared_faces"] = shared_faces(s).size();
  r.text << s.parts.size() << " parts, " << shared_faces(s).size() << " shared faces\n";
  for (const auto& p : parts) r.text << "  " << p << "\n";
  if (!labels_file.empty()) {
    const auto checked = compose_check(s, parse_labels(s, load(labels_file)));
    r.data["incidences_checked"] = checked;
    r.text << checked << " incidences agree\n";
  }
  return r;
}

// dg

Reply dg_laws(const std::string& file, unsigned threads, std::size_t bound) {
  Reply r;
  const DoubleGroupoid g(load_crossed_module(file, bound));
  LawOptions options;
  options.threads = threads;
  const auto report = run_law_suite(g, options);
  r.data["name"] = g.crossed_module().name;
  r.data["laws"] = json::array();
  for (const auto& c : report.checks) {
    r.data["laws"].push_back({{"name", c.name}, {"cases", c.cases}, {"failures", c.failures}, {"witness", c.witness}});
    r.text << (c.ok() ? "ok    " : "FAIL  ") << c.name << ": " << c.cases << " cases";
    if (!c.ok()) r.text << ", " << c.failures << " failures, e.g. " << c.witness;
    r.text << "\n";
  }
  r.data["ok"] = report.ok();
  r.code = report.ok() ? kOk : kViolation;
  return r;
}

Reply dg_hcl(const std::string& file, const std::string& xmod, std::size_t bound) {
  Reply r;
  const auto path = resolve(file);
  const auto shell_file = split_shell_file(read_text_file(path));
  const auto xmod_file = xmod.empty() ? shell_file.xmod : xmod;
  if (xmod_file.empty()) fail(Errc::parse, "the shell names no crossed module; pass --xmod");
  const DoubleGroupoid g(load_crossed_module(xmod_file, bound, path));
  const auto sh = parse_shell(g, shell_file.faces);
  const auto defect = shell_defect(g, sh);
  if (!defect.empty()) fail(Errc::malformed_shell, defect);
  const auto odd = odd_composite(g, sh), even = even_composite(g, sh);
  const bool commutative = odd == even;
  const bool five = five_face_commutative(g, sh);
  r.data = {{"odd", g.to_string(odd)},
            {"even", g.to_string(even)},
            {"commutative", commutative},
            {"five_face_agrees", five == commutative}};
  r.text << "odd:  " << g.to_string(odd) << "\neven: " << g.to_string(even) << "\n"
         << (commutative ? "commutative" : "not commutative") << "\n";
  if (five != commutative) r.text << "five-face formula DISAGREES\n";
  r.code = five == commutative ? kOk : kViolation;
  return r;
}

Reply dg_shells(const std::string& file, unsigned threads, std::size_t bound) {
  Reply r;
  const DoubleGroupoid g(load_crossed_module(file, bound));
  const auto census = shell_census(g, threads);
  r.data = {{"name", g.crossed_module().name},
            {"shells", census.shells},
            {"commutative", census.commutative},
            {"disagreements", census.disagreements}};
  r.text << census.shells << " well-formed shells, " << census.commutative << " commutative, " << census.disagreements
         << " disagreements with the five-face formula\n";
  r.code = census.disagreements == 0 ? kOk : kViolation;
  return r;
}

Reply acceptance(const std::string& suite, std::size_t bound) {
  Reply r;
  const auto report = run_acceptance(suite, bound);
  r.data["suite"] = suite;
  r.data["criteria"] = json::array();
  for (const auto& c : report.criteria) {
    r.data["criteria"].push_back({{"id", c.id},
                                  {"title", c.title},
                                  {"passed", c.passed},
                                  {"seconds", c.seconds},
                                  {"limit_seconds", c.limit_seconds},
                                  {"detail", c.detail}});
    r.text << format_line(c) << "\n";
  }
  r.data["ok"] = report.ok();
  r.code = report.ok() ? kOk : kViolation;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xkit: crossed modules, crossed complexes, double groupoids and cubical collapses"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_mode = false;
  std::size_t bound = default_bound();
  app.add_flag("--json", json_mode, "Machine-readable output");
  app.add_option("--bound", bound, "Enumeration bound (default from XKIT_BOUND, else 4096)");

  std::function<Reply()> action;
  auto verb = [&](CLI::App* parent, const std::string& name, const std::string& about, std::function<Reply()> run) {
    auto* sub = parent->add_subcommand(name, about);
    sub->callback([&action, run] { action = run; });
    return sub;
  };
  auto noun = [&](const std::string& name, const std::string& about) {
    auto* sub = app.add_subcommand(name, about);
    sub->require_subcommand(1);
    return sub;
  };

  std::string file, file2, word, option, option2, out;
  int n = 0, maxdeg = 4, degree = 0;
  unsigned threads = 0;

  auto* group = noun("group", "Finitely presented groups and integer matrices");
  verb(group, "enum", "Enumerate a finite presentation", [&] { return group_enum(file, bound); })
      ->add_option("presentation", file, "File or text such as 'gens: x; rels: x^3'")
      ->required();
  verb(group, "snf", "Smith normal form", [&] { return group_snf(file); })
      ->add_option("matrix", file, "File or text such as '2 4; 6 8'")
      ->required();

  auto* gpd = noun("gpd", "Groupoid presentations");
  verb(gpd, "pushout", "Glue a span of groupoids and report vertex groups", [&] { return gpd_pushout(file, bound); })
      ->add_option("file", file)
      ->required();
  auto* vg = verb(gpd, "vertex-group", "Vertex group at an object", [&] { return gpd_vertex_group(file, option, bound); });
  vg->add_option("file", file)->required();
  vg->add_option("--object", option, "Base object (default: the first)");

  auto* xmod = noun("xmod", "Crossed modules");
  verb(xmod, "validate", "Check the crossed module axioms", [&] { return xmod_validate(file, bound); })
      ->add_option("file", file)
      ->required();
  verb(xmod, "consequences", "Image normal, kernel central", [&] { return xmod_consequences(file, bound); })
      ->add_option("file", file)
      ->required();
  auto* fcm = verb(xmod, "fcm-eq", "Equality in the free crossed module of a presentation",
                   [&] { return xmod_fcm_eq(file, option, option2, bound); });
  fcm->add_option("presentation", file)->required();
  fcm->add_option("a", option, "Element such as 'r1 - r1^x'")->required();
  fcm->add_option("b", option2)->required();

  auto* fox = noun("fox", "Fox calculus");
  auto* deriv = verb(fox, "deriv", "Fox derivatives of a word", [&] { return fox_deriv(file, word, option, bound); });
  deriv->add_option("presentation", file)->required();
  deriv->add_option("word", word)->required();
  deriv->add_option("--by", option, "Only this generator");
  verb(fox, "jacobian", "Relator matrix over Z[G]", [&] { return fox_jacobian_cmd(file, bound); })
      ->add_option("presentation", file)
      ->required();
  verb(fox, "identities", "Module of identities among relations", [&] { return fox_identities(file, bound); })
      ->add_option("presentation", file)
      ->required();
  verb(fox, "nabla", "Chain complex of the presentation", [&] { return fox_nabla(file, bound); })
      ->add_option("presentation", file)
      ->required();

  auto* crs = noun("crs", "Crossed complexes");
  verb(crs, "validate", "Check the crossed complex axioms", [&] { return crs_validate(file, bound); })
      ->add_option("file", file)
      ->required();
  auto* pi1 = verb(crs, "pi1", "Fundamental group at an object", [&] { return crs_pi1(file, option, bound); });
  pi1->add_option("file", file)->required();
  pi1->add_option("--object", option);
  auto* hom = verb(crs, "homology", "H_n for n >= 2", [&] { return crs_homology(file, degree, option, bound); });
  hom->add_option("file", file)->required();
  hom->add_option("--degree", degree, "Only this degree");
  hom->add_option("--object", option);
  auto* tensor = verb(crs, "tensor", "Tensor product A (x) B", [&] { return crs_tensor(file, file2, maxdeg, out, bound); });
  tensor->add_option("a", file)->required();
  tensor->add_option("b", file2)->required();
  tensor->add_option("--maxdeg", maxdeg, "Highest degree built")->capture_default_str();
  tensor->add_option("--out", out, "Write the product here");
  auto* cyl = verb(crs, "cylinder", "I (x) C", [&] { return crs_cylinder(file, maxdeg, out, bound); });
  cyl->add_option("file", file)->required();
  cyl->add_option("--maxdeg", maxdeg)->capture_default_str();
  cyl->add_option("--out", out);
  verb(crs, "homotopy", "Check a homotopy file (source, target, f, g, H)", [&] { return crs_homotopy(file, bound); })
      ->add_option("file", file)
      ->required();

  auto* cube = noun("cube", "Cubical complexes and collapses");
  auto* collapse = verb(cube, "collapse", "Collapse I^n to a vertex, or replay a certificate",
                        [&] { return cube_collapse(n, option, file, file2, out); });
  collapse->add_option("--n", n, "Dimension of the cube");
  collapse->add_option("--to-vertex", option, "Target vertex such as 000");
  collapse->add_option("complex", file, "Complex to replay on");
  collapse->add_option("certificate", file2, "Certificate lines 'cell face'");
  collapse->add_option("--out", out, "Write the certificate here");
  auto* product = verb(cube, "product-collapse", "Collapse B x I to B x 0 u C x I",
                       [&] { return cube_product_collapse(file, file2, out); });
  product->add_option("b", file)->required();
  product->add_option("c", file2)->required();
  product->add_option("--out", out);
  auto* boxchain = verb(cube, "boxchain", "Chain of partial boxes between two partial boxes of a cell",
                        [&] { return cube_boxchain(word, option, option2); });
  boxchain->add_option("--cell", word, "Cell such as ***")->required();
  boxchain->add_option("--outer", option, "Faces of the larger box, comma separated")->required();
  boxchain->add_option("--inner", option2, "Faces of the smaller box")->required();
  auto* sub = verb(cube, "subdivide", "Subdivision of type (m1, ..., mn)", [&] { return cube_subdivide(option, file); });
  sub->add_option("--m", option, "Part counts such as 2,3")->required();
  sub->add_option("--labels", file, "Face labels to check for agreement");

  auto* dg = noun("dg", "Double groupoid of a crossed module");
  auto* laws = verb(dg, "laws", "Exhaustive law suite", [&] { return dg_laws(file, threads, bound); });
  laws->add_option("xmod", file)->required();
  laws->add_option("--threads", threads, "Workers (default: all cores)");
  auto* hcl = verb(dg, "hcl", "Commutativity of a 3-shell", [&] { return dg_hcl(file, option, bound); });
  hcl->add_option("shell", file)->required();
  hcl->add_option("--xmod", option, "Crossed module, overriding the shell's header");
  auto* shells = verb(dg, "shells", "Census of all 3-shells", [&] { return dg_shells(file, threads, bound); });
  shells->add_option("xmod", file)->required();
  shells->add_option("--threads", threads);

  auto* acc = app.add_subcommand("acceptance", "Run acceptance criteria");
  acc->add_option("suite", option, joined(suite_names()))->required();
  acc->callback([&] { action = [&] { return acceptance(option, bound); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    auto reply = action();
    if (json_mode) std::cout << reply.data.dump(2) << "\n";
    else std::cout << reply.text.str();
    return reply.code;
  } catch (const Error& e) {
    const int code = exit_code(e.code());
    if (json_mode) std::cout << json{{"error", e.what()}, {"exit", code}}.dump(2) << "\n";
    else std::cerr << "error: " << e.what() << "\n";
    return code;
  } catch (const std::exception& e) {
    if (json_mode) std::cout << json{{"error", e.what()}, {"exit", static_cast<int>(kInputError)}}.dump(2) << "\n";
    else std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
