#include "xkit/complex_eval.hpp"

#include <algorithm>

#include "xkit/error.hpp"

namespace xkit {

ComplexEvaluator::ComplexEvaluator(const CrossedComplex& c, int object, std::size_t bound, bool trivialize)
    : complex_(&c), bound_(bound) {
  const auto& g = c.graph();
  if (object < 0 || object >= static_cast<int>(g.objects.size())) fail(Errc::object_not_found, "object out of range");
  auto fg = fundamental_groupoid(c);
  vertex_ = vertex_group_data(fg, object, maximal_tree(g));
  try {
    pi1_ = enumerate_fp_group(vertex_.presentation, bound);
    group_ = pi1_.group();
    finite_ = true;
  } catch (const Error& e) {
    if (e.code() != Errc::unbounded) throw;
    if (!trivialize)
      fail(Errc::unbounded, "fundamental group at " + g.objects[object] + " did not close within bound " +
                                std::to_string(bound));
    group_ = FiniteGroup();
  }
  edge_local_.assign(g.edges.size(), -1);
  edge_phi_.assign(g.edges.size(), 0);
  for (std::size_t o = 0; o < g.objects.size(); ++o)
    if (vertex_.in_component[o]) local_objects_.push_back(static_cast<int>(o));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!vertex_.in_component[g.edges[e].source]) continue;
    edge_local_[e] = static_cast<int>(local_edges_.size());
    local_edges_.push_back(static_cast<int>(e));
    if (finite_) edge_phi_[e] = pi1_.evaluate(vertex_.loop_word(edge_path(g, static_cast<int>(e))));
  }
}

const GroupoidWordSolver& ComplexEvaluator::c1() const {
  if (!solver_) solver_ = std::make_unique<GroupoidWordSolver>(complex_->c1, bound_);
  return *solver_;
}

const std::vector<int>& ComplexEvaluator::local_generators(int degree) const {
  if (degree < 0) fail(Errc::precondition_failed, "negative degree");
  if (static_cast<int>(local_gens_.size()) <= degree) {
    local_gens_.resize(degree + 1);
    gen_local_.resize(degree + 1);
  }
  auto& gens = local_gens_[degree];
  auto& back = gen_local_[degree];
  if (back.size() != complex_->generator_count(degree)) {
    gens.clear();
    back.assign(complex_->generator_count(degree), -1);
    for (std::size_t i = 0; i < back.size(); ++i) {
      int base = degree == 0   ? static_cast<int>(i)
                 : degree == 1 ? complex_->graph().edges[i].source
                               : complex_->base(degree, static_cast<int>(i));
      if (!vertex_.in_component[base]) continue;
      back[i] = static_cast<int>(gens.size());
      gens.push_back(static_cast<int>(i));
    }
  }
  return gens;
}

int ComplexEvaluator::phi(const EdgePath& path) const {
  int x = 0;
  for (const Letter& l : path.letters) {
    if (edge_local_[l.gen] < 0) fail(Errc::precondition_failed, "path leaves the component");
    x = group_.mul(x, l.sign > 0 ? edge_phi_[l.gen] : group_.inv(edge_phi_[l.gen]));
  }
  return x;
}

std::vector<ZG> ComplexEvaluator::lin(int degree, const Chain& a) const {
  const auto& gens = local_generators(degree);
  std::vector<ZG> out(gens.size());
  for (const auto& t : a.terms) {
    int local = gen_local_[degree].at(t.gen);
    if (local < 0) fail(Errc::precondition_failed, "generator outside the component");
    out[local].add_term(phi(t.act), t.coef);
  }
  return out;
}

std::vector<ZG> ComplexEvaluator::h1(const EdgePath& path) const {
  std::vector<ZG> out(local_edges_.size());
  int suffix = 0;
  for (std::size_t k = path.letters.size(); k-- > 0;) {
    const Letter& l = path.letters[k];
    int local = edge_local_.at(l.gen);
    if (local < 0) fail(Errc::precondition_failed, "path leaves the component");
    int step = l.sign > 0 ? edge_phi_[l.gen] : group_.inv(edge_phi_[l.gen]);
    if (l.sign > 0) out[local].add_term(suffix, 1);
    else out[local].add_term(group_.mul(step, suffix), -1);
    suffix = group_.mul(step, suffix);
  }
  return out;
}

const IntMatrix& ComplexEvaluator::relation_lattice(int degree) const {
  auto it = lattices_.find(degree);
  if (it != lattices_.end()) return it->second;
  const auto& g = complex_->graph();
  std::vector<std::vector<ZG>> rows;
  std::size_t rank = 0;
  if (degree == 1) {
    rank = local_edges_.size();
    for (const auto& r : complex_->c1.relations)
      if (vertex_.in_component[r.lhs.start]) rows.push_back(h1(concat(r.lhs, inverse(r.rhs, g), g)));
  } else {
    rank = local_generators(degree).size();
    for (const auto& r : complex_->level(degree).relations)
      if (vertex_.in_component[r.object]) rows.push_back(lin(degree, r));
  }
  IntMatrix closure = translate_closure(rows, rank, group_);
  IntMatrix basis = closure.rows() ? row_lattice_basis(closure) : closure;
  return lattices_.emplace(degree, std::move(basis)).first->second;
}

bool ComplexEvaluator::in_relation_lattice(int degree, const std::vector<ZG>& v) const {
  auto coords = expand_vector(v, group_);
  if (std::all_of(coords.begin(), coords.end(), [](std::int64_t x) { return x == 0; })) return true;
  const IntMatrix& lattice = relation_lattice(degree);
  if (lattice.rows() == 0) return false;
  return solve_left(lattice, coords).has_value();
}

bool ComplexEvaluator::is_zero(int degree, const Chain& a) const {
  if (degree == 2 && !c1().is_identity(boundary2(*complex_, a))) return false;
  return in_relation_lattice(degree, lin(degree, a));
}

bool ComplexEvaluator::equal(int degree, const Chain& a, const Chain& b) const {
  if (a.object != b.object) return false;
  return is_zero(degree, add(a, negate(b)));
}

const ComplexEvaluator& ComplexContext::at(int object) const {
  if (component_.empty()) component_ = components(complex_->graph());
  int comp = component_.at(object);
  auto it = by_component_.find(comp);
  if (it == by_component_.end())
    it = by_component_.emplace(comp, std::make_unique<ComplexEvaluator>(*complex_, object, bound_)).first;
  return *it->second;
}

bool ComplexReport::ok() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.passed; });
}

const AxiomResult& ComplexReport::axiom(const std::string& name) const {
  for (const auto& a : axioms)
    if (a.name == name) return a;
  fail(Errc::precondition_failed, "no axiom named '" + name + "'");
}

namespace {

constexpr std::size_t kMaxWitnesses = 5;
constexpr std::size_t kMaxPairs = 400;

void witness(AxiomResult& a, const std::string& text) {
  a.passed = false;
  if (a.witnesses.size() < kMaxWitnesses) a.witnesses.push_back(text);
}

// Returns false when the element is not a well-formed chain of that degree.
bool chain_well_formed(const CrossedComplex& c, int degree, const Chain& a, std::string& why) {
  const auto& g = c.graph();
  if (a.object < 0 || a.object >= static_cast<int>(g.objects.size())) {
    why = "object out of range";
    return false;
  }
  for (const auto& t : a.terms) {
    if (t.gen < 0 || t.gen >= static_cast<int>(c.generator_count(degree))) {
      why = "unknown generator";
      return false;
    }
    try {
      check_composable(t.act, g);
    } catch (const Error&) {
      why = "action path is not composable";
      return false;
    }
    if (t.act.start != c.base(degree, t.gen) || path_end(t.act, g) != a.object) {
      why = "action path of " + c.level(degree).generators[t.gen].name + " does not run from its base to the object";
      return false;
    }
  }
  return true;
}

}  // namespace

ComplexReport validate_complex(const CrossedComplex& c, std::size_t bound) {
  ComplexReport report;
  const auto& g = c.graph();
  AxiomResult placement{"boundary placement"}, dd{"dd = 0"}, cycles{"relations are cycles"},
      xmod{"crossed module in degree 2"}, trivial{"boundaries act trivially"}, abelian{"abelian above degree 2"};
  try {
    validate(c.c1);
  } catch (const Error& e) {
    witness(placement, e.what());
  }
  for (int d = 2; d <= c.top_degree(); ++d) {
    const auto& level = c.level(d);
    for (const auto& gen : level.generators) {
      ++placement.checked;
      std::string why;
      if (d == 2) {
        try {
          check_composable(gen.loop, g);
          if (gen.loop.start != gen.base || path_end(gen.loop, g) != gen.base) witness(placement, gen.name + ": boundary is not a loop at its base");
        } catch (const Error&) {
          witness(placement, gen.name + ": boundary is not composable");
        }
      } else if (!chain_well_formed(c, d - 1, gen.boundary, why) || gen.boundary.object != gen.base) {
        witness(placement, gen.name + ": " + (why.empty() ? "boundary does not sit at its base" : why));
      }
    }
    for (const auto& r : level.relations) {
      ++placement.checked;
      std::string why;
      if (!chain_well_formed(c, d, r, why)) witness(placement, "relation " + to_string(c, d, r) + ": " + why);
    }
  }
  report.axioms.push_back(placement);
  if (!placement.passed) {
    report.warnings.push_back("later axioms skipped: malformed boundaries");
    for (auto* a : {&dd, &cycles, &xmod, &trivial, &abelian}) {
      a->skipped = true;
      report.axioms.push_back(*a);
    }
    return report;
  }
  ComplexContext ctx(c, bound);
  auto guarded = [&](AxiomResult& a, auto&& body) {
    try {
      body();
    } catch (const Error& e) {
      if (e.code() != Errc::unbounded) throw;
      a.skipped = true;
      std::string w = a.name + " skipped: " + e.what();
      if (std::find(report.warnings.begin(), report.warnings.end(), w) == report.warnings.end()) report.warnings.push_back(w);
    }
  };
  for (int d = 3; d <= c.top_degree(); ++d)
    for (const auto& gen : c.level(d).generators)
      guarded(dd, [&] {
        const auto& ev = ctx.at(gen.base);
        bool zero = d == 3 ? ev.c1().is_identity(boundary2(c, gen.boundary))
                           : ev.is_zero(d - 2, boundary(c, d - 1, gen.boundary));
        ++dd.checked;
        if (!zero) witness(dd, "d d " + gen.name + " is not zero");
      });
  for (int d = 2; d <= c.top_degree(); ++d)
    for (const auto& r : c.level(d).relations)
      guarded(cycles, [&] {
        const auto& ev = ctx.at(r.object);
        bool zero = d == 2 ? ev.c1().is_identity(boundary2(c, r)) : ev.is_zero(d - 1, boundary(c, d, r));
        ++cycles.checked;
        if (!zero) witness(cycles, "boundary of relation " + to_string(c, d, r) + " is not zero");
      });
  const auto& two = c.level(2).generators;
  std::size_t pairs = 0;
  for (std::size_t b = 0; b < two.size() && pairs < kMaxPairs; ++b)
    for (std::size_t x = 0; x < two.size() && pairs < kMaxPairs; ++x) {
      if (two[b].base != two[x].base) continue;
      ++pairs;
      guarded(xmod, [&] {
        const auto& ev = ctx.at(two[b].base);
        Chain bc = generator_chain(c, 2, static_cast<int>(b)), xc = generator_chain(c, 2, static_cast<int>(x));
        Chain lhs = add(add(negate(bc), xc), bc);
        Chain rhs = act(xc, two[b].loop, g);
        ++xmod.checked;
        if (!ev.equal(2, lhs, rhs)) witness(xmod, two[b].name + "^-1 " + two[x].name + " " + two[b].name + " differs from the action");
      });
    }
  for (int d = 3; d <= c.top_degree(); ++d) {
    const auto& gens = c.level(d).generators;
    pairs = 0;
    for (std::size_t i = 0; i < gens.size() && pairs < kMaxPairs; ++i) {
      for (std::size_t k = 0; k < two.size() && pairs < kMaxPairs; ++k) {
        if (two[k].base != gens[i].base) continue;
        ++pairs;
        guarded(trivial, [&] {
          const auto& ev = ctx.at(gens[i].base);
          Chain x = generator_chain(c, d, static_cast<int>(i));
          ++trivial.checked;
          if (!ev.equal(d, act(x, two[k].loop, g), x)) witness(trivial, "boundary of " + two[k].name + " moves " + gens[i].name);
        });
      }
      for (std::size_t j = 0; j < gens.size() && pairs < kMaxPairs; ++j) {
        if (gens[j].base != gens[i].base) continue;
        ++pairs;
        guarded(abelian, [&] {
          const auto& ev = ctx.at(gens[i].base);
          Chain x = generator_chain(c, d, static_cast<int>(i)), y = generator_chain(c, d, static_cast<int>(j));
          ++abelian.checked;
          if (!ev.equal(d, add(x, y), add(y, x))) witness(abelian, gens[i].name + " and " + gens[j].name + " do not commute");
        });
      }
    }
  }
  for (auto* a : {&dd, &cycles, &xmod, &trivial, &abelian}) report.axioms.push_back(*a);
  return report;
}

namespace {

// Each generator of the degree is fixed by every generator of pi1 through a relation
// of the literal form g^u - g^v.
bool visibly_trivial(const ComplexEvaluator& ev, int degree) {
  const auto& c = ev.complex();
  const auto& vg = ev.vertex_group();
  const std::size_t k = vg.presentation.generators.size();
  if (k == 0) return true;
  for (int gen : ev.local_generators(degree)) {
    std::vector<char> fixed(k, 0);
    for (const auto& r : c.level(degree).relations) {
      if (r.terms.size() != 2 || r.terms[0].gen != gen || r.terms[1].gen != gen) continue;
      if (r.terms[0].coef != -r.terms[1].coef || (r.terms[0].coef != 1 && r.terms[0].coef != -1)) continue;
      FreeWord w = vg.loop_word(r.terms[0].act) * vg.loop_word(r.terms[1].act).inverse();
      if (w.length() == 1) fixed[w.letters()[0].gen] = 1;
    }
    if (std::count(fixed.begin(), fixed.end(), 1) != static_cast<long>(k)) return false;
  }
  return true;
}

IntMatrix stack(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(0, a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) out.append_row(a.row(i));
  for (std::size_t i = 0; i < b.rows(); ++i) out.append_row(b.row(i));
  return out;
}

}  // namespace

AbelianInvariants homology(const CrossedComplex& c, int n, int object, std::size_t bound) {
  if (n < 2) fail(Errc::precondition_failed, "homology is computed in degrees n >= 2");
  std::unique_ptr<ComplexEvaluator> ev;
  try {
    ev = std::make_unique<ComplexEvaluator>(c, object, bound);
  } catch (const Error& e) {
    if (e.code() != Errc::unbounded) throw;
    auto trivial = std::make_unique<ComplexEvaluator>(c, object, bound, true);
    bool ok = visibly_trivial(*trivial, n) && visibly_trivial(*trivial, n + 1) && (n == 2 || visibly_trivial(*trivial, n - 1));
    if (n == 2)
      for (int gen : trivial->local_generators(2)) ok &= c.level(2).generators[gen].loop.is_identity();
    if (!ok) fail(Errc::unsupported_action, "fundamental group does not close and the action is not visibly trivial");
    ev = std::move(trivial);
  }
  const auto& G = ev->group();
  const std::size_t order = G.order();
  const auto& here = ev->local_generators(n);
  const std::size_t width = here.size() * order;
  // boundary of degree n into degree n-1 coordinates, and the relations there
  IntMatrix lower, lower_rel;
  if (n == 2) {
    ModuleMatrix rows;
    for (int gen : here) rows.push_back(ev->h1(c.level(2).generators[gen].loop));
    lower = expand_map(rows, ev->local_edges().size(), G);
    lower_rel = ev->relation_lattice(1);
  } else {
    ModuleMatrix rows;
    for (int gen : here) rows.push_back(ev->lin(n - 1, c.level(n).generators[gen].boundary));
    lower = expand_map(rows, ev->local_generators(n - 1).size(), G);
    lower_rel = ev->relation_lattice(n - 1);
  }
  IntMatrix cycles;
  if (lower.cols() == 0) {
    cycles = IntMatrix::identity(width);
  } else {
    IntMatrix kernel = left_kernel(stack(lower, lower_rel));
    IntMatrix projected(0, width);
    for (std::size_t i = 0; i < kernel.rows(); ++i) {
      auto row = kernel.row(i);
      row.resize(width);
      projected.append_row(row);
    }
    cycles = projected.rows() ? row_lattice_basis(projected) : projected;
  }
  IntMatrix bounding = ev->relation_lattice(n);
  {
    ModuleMatrix rows;
    for (int gen : ev->local_generators(n + 1)) rows.push_back(ev->lin(n, c.level(n + 1).generators[gen].boundary));
    bounding = stack(bounding, expand_map(rows, here.size(), G));
  }
  IntMatrix in_cycles(0, cycles.rows());
  for (std::size_t i = 0; i < bounding.rows(); ++i) {
    auto coords = solve_left(cycles, bounding.row(i));
    if (!coords) fail(Errc::precondition_failed, "a boundary or relation in degree " + std::to_string(n) + " is not a cycle");
    in_cycles.append_row(*coords);
  }
  return cokernel_invariants(in_cycles, cycles.rows());
}

OperatorChainComplex nabla(const CrossedComplex& c, int object, std::size_t bound) {
  ComplexEvaluator ev(c, object, bound);
  const auto& g = c.graph();
  const auto& G = ev.group();
  OperatorChainComplex out;
  out.group = G;
  std::vector<int> object_local(g.objects.size(), -1);
  std::vector<std::string> names;
  for (int o : ev.local_objects()) {
    object_local[o] = static_cast<int>(names.size());
    names.push_back(g.objects[o]);
  }
  out.ranks.push_back(names.size());
  out.basis_names.push_back(names);
  out.boundaries.emplace_back();
  out.relations.emplace_back();
  names.clear();
  ModuleMatrix d1, r1;
  for (int e : ev.local_edges()) {
    names.push_back(g.edges[e].name);
    std::vector<ZG> row(out.ranks[0]);
    row[object_local[g.edges[e].source]] += ZG::unit(ev.phi(edge_path(g, e)));
    row[object_local[g.edges[e].target]] -= ZG::unit(0);
    d1.push_back(row);
  }
  for (const auto& r : c.c1.relations)
    if (ev.in_component(r.lhs.start)) r1.push_back(ev.h1(concat(r.lhs, inverse(r.rhs, g), g)));
  out.ranks.push_back(names.size());
  out.basis_names.push_back(names);
  out.boundaries.push_back(d1);
  out.relations.push_back(r1);
  for (int d = 2; d <= c.top_degree(); ++d) {
    names.clear();
    ModuleMatrix dn, rn;
    for (int gen : ev.local_generators(d)) {
      const auto& cell = c.level(d).generators[gen];
      names.push_back(cell.name);
      dn.push_back(d == 2 ? ev.h1(cell.loop) : ev.lin(d - 1, cell.boundary));
    }
    for (const auto& r : c.level(d).relations)
      if (ev.in_component(r.object)) rn.push_back(ev.lin(d, r));
    out.ranks.push_back(names.size());
    out.basis_names.push_back(names);
    out.boundaries.push_back(dn);
    out.relations.push_back(rn);
  }
  return out;
}

const std::vector<Chain>& ComplexMorphism::cells_of(int degree) const {
  static const std::vector<Chain> empty;
  if (degree < 2 || degree - 2 >= static_cast<int>(cells.size())) return empty;
  return cells[degree - 2];
}

EdgePath map_path(const ComplexMorphism& f, const EdgePath& p, const DirectedGraph& target) {
  EdgePath out{f.objects.at(p.start), {}};
  for (const Letter& l : p.letters) {
    const EdgePath& img = f.edges.at(l.gen);
    out = concat(out, l.sign > 0 ? img : inverse(img, target), target);
  }
  return out;
}

Chain map_chain(const ComplexMorphism& f, int degree, const Chain& a, const CrossedComplex& target) {
  Chain out = zero_chain(f.objects.at(a.object));
  for (const auto& t : a.terms) {
    const Chain& img = f.cells_of(degree).at(t.gen);
    out = add(out, scale(act(img, map_path(f, t.act, target.graph()), target.graph()), t.coef));
  }
  return out;
}

MorphismCheck check_morphism(const CrossedComplex& src, const CrossedComplex& dst, const ComplexMorphism& f,
                             std::size_t bound) {
  MorphismCheck out;
  const auto& sg = src.graph();
  const auto& dg = dst.graph();
  auto problem = [&](const std::string& s) {
    out.ok = false;
    if (out.problems.size() < 10) out.problems.push_back(s);
  };
  if (f.objects.size() != sg.objects.size() || f.edges.size() != sg.edges.size()) {
    problem("map sizes do not match the source");
    return out;
  }
  for (int d = 2; d <= src.top_degree(); ++d)
    if (f.cells_of(d).size() != src.generator_count(d)) {
      problem("degree " + std::to_string(d) + " images missing");
      return out;
    }
  ComplexContext ctx(dst, bound);
  auto guarded = [&](const std::string& what, auto&& body) {
    try {
      ++out.checked;
      body();
    } catch (const Error& e) {
      if (e.code() == Errc::unbounded) {
        out.skipped.push_back(what + ": " + e.what());
      } else {
        problem(what + ": " + e.what());
      }
    }
  };
  for (std::size_t e = 0; e < sg.edges.size(); ++e)
    guarded("edge " + sg.edges[e].name, [&] {
      const auto& img = f.edges[e];
      check_composable(img, dg);
      if (img.start != f.objects[sg.edges[e].source] || path_end(img, dg) != f.objects[sg.edges[e].target])
        problem("image of " + sg.edges[e].name + " has wrong endpoints");
    });
  if (!out.ok) return out;
  for (const auto& r : src.c1.relations)
    guarded("relation " + to_string(r.lhs, sg), [&] {
      EdgePath a = map_path(f, r.lhs, dg), b = map_path(f, r.rhs, dg);
      if (!ctx.at(a.start).c1().equal(a, b)) problem("relation " + to_string(r.lhs, sg) + " = " + to_string(r.rhs, sg) + " not preserved");
    });
  for (int d = 2; d <= src.top_degree(); ++d) {
    const auto& level = src.level(d);
    for (std::size_t i = 0; i < level.generators.size(); ++i) {
      const auto& gen = level.generators[i];
      guarded("generator " + gen.name, [&] {
        const Chain& img = f.cells_of(d)[i];
        if (img.object != f.objects[gen.base]) {
          problem("image of " + gen.name + " sits at the wrong object");
          return;
        }
        bool same = d == 2 ? ctx.at(img.object).c1().equal(boundary2(dst, img), map_path(f, gen.loop, dg))
                           : ctx.at(img.object).equal(d - 1, boundary(dst, d, img), map_chain(f, d - 1, gen.boundary, dst));
        if (!same) problem("boundary of " + gen.name + " is not preserved");
      });
    }
    for (const auto& r : level.relations)
      guarded("relation " + to_string(src, d, r), [&] {
        if (!ctx.at(f.objects[r.object]).is_zero(d, map_chain(f, d, r, dst)))
          problem("relation " + to_string(src, d, r) + " does not map to zero");
      });
  }
  return out;
}

}  // namespace xkit
