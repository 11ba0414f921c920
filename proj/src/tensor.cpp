#include "xkit/tensor.hpp"

#include "xkit/error.hpp"

namespace xkit {

std::size_t basis_count(const CrossedComplex& c, int degree) {
  if (degree == 0) return c.graph().objects.size();
  if (degree == 1) return c.graph().edges.size();
  return c.generator_count(degree);
}

std::string basis_name(const CrossedComplex& c, int degree, int index) {
  if (degree == 0) return c.graph().objects.at(index);
  if (degree == 1) return c.graph().edges.at(index).name;
  return c.level(degree).generators.at(index).name;
}

CellElement basis_element(const CrossedComplex& c, int degree, int index) {
  if (degree == 0) return CellElement::at_object(index);
  if (degree == 1) return CellElement::along(edge_path(c.graph(), index));
  return CellElement::of_chain(degree, generator_chain(c, degree, index));
}

int TensorComplex::index_of(int a_degree, int a_index, int b_degree, int b_index) const {
  auto it = lookup.find({a_degree, a_index, b_degree, b_index});
  return it == lookup.end() ? -1 : it->second;
}

namespace {

int beta(const CrossedComplex& c, const CellElement& x) {
  if (x.degree == 0) return x.object;
  if (x.degree == 1) return path_end(x.path, c.graph());
  return x.chain.object;
}

// Boundary of a basis element as an element one degree down; degree-2 boundaries are loops.
CellElement delta(const CrossedComplex& c, int degree, int index) {
  const auto& gen = c.level(degree).generators.at(index);
  if (degree == 2) return CellElement::along(gen.loop);
  return CellElement::of_chain(degree - 1, gen.boundary);
}

class Theta {
 public:
  explicit Theta(const TensorComplex& t) : t_(t), a_(t.left), b_(t.right), g_(t.complex.graph()) {}

  int object(int p, int q) const { return t_.index_of(0, p, 0, q); }

  int index(int m, int i, int n, int j) const {
    int k = t_.index_of(m, i, n, j);
    if (k < 0) fail(Errc::precondition_failed, "tensor generator beyond the computed degree");
    return k;
  }

  Chain generator(int m, int i, int n, int j) const { return generator_chain(t_.complex, m + n, index(m, i, n, j)); }

  EdgePath path(const CellElement& x, const CellElement& y) const { return (*this)(x, y).path; }

  CellElement operator()(const CellElement& x, const CellElement& y) const {
    const int m = x.degree, n = y.degree;
    if (m + n > t_.max_degree) fail(Errc::precondition_failed, "tensor element beyond the computed degree");
    if (m == 0 && n == 0) return CellElement::at_object(object(x.object, y.object));
    if (m == 0 && n == 1) {
      EdgePath out{object(x.object, y.path.start), {}};
      for (const Letter& l : y.path.letters) out.letters.push_back({index(0, x.object, 1, l.gen), l.sign});
      return CellElement::along(out);
    }
    if (m == 1 && n == 0) {
      EdgePath out{object(x.path.start, y.object), {}};
      for (const Letter& l : x.path.letters) out.letters.push_back({index(1, l.gen, 0, y.object), l.sign});
      return CellElement::along(out);
    }
    const int by = beta(b_, y);
    Chain out = zero_chain(object(beta(a_, x), by));
    if (m >= 2) {
      for (const auto& term : x.chain.terms) {
        Chain piece = act(left_generator(m, term.gen, y), path(CellElement::along(term.act), CellElement::at_object(by)), g_);
        out = add(out, scale(piece, term.coef));
      }
    } else if (m == 0) {
      for (const auto& term : y.chain.terms) {
        Chain piece = act(generator(0, x.object, n, term.gen), path(x, CellElement::along(term.act)), g_);
        out = add(out, scale(piece, term.coef));
      }
    } else {
      // theta(e + rest, y) = theta(rest, y) + theta(e, y)^theta(rest, beta y)
      const auto& ag = a_.graph();
      EdgePath tail{path_end(x.path, ag), {}};
      for (std::size_t j = x.path.letters.size(); j-- > 0;) {
        const Letter& l = x.path.letters[j];
        Chain step = left_generator(1, l.gen, y);
        if (l.sign < 0)
          step = negate(act(step, path(CellElement::along(edge_path(ag, l.gen, -1)), CellElement::at_object(by)), g_));
        out = add(out, act(step, path(CellElement::along(tail), CellElement::at_object(by)), g_));
        tail.letters.insert(tail.letters.begin(), l);
        tail.start = ag.letter_source(l);
      }
    }
    return CellElement::of_chain(m + n, out);
  }

 private:
  // theta(g, y) for a basis element g of degree m >= 1 of the left factor.
  Chain left_generator(int m, int g, const CellElement& y) const {
    const int bg = m == 1 ? a_.graph().edges.at(g).target : a_.base(m, g);
    const int n = y.degree;
    if (n == 0) return generator(m, g, 0, y.object);
    Chain out = zero_chain(object(bg, beta(b_, y)));
    if (n == 1) {
      // theta(g, f + rest) = theta(g, f)^theta(beta g, rest) + theta(g, rest)
      const auto& bgraph = b_.graph();
      EdgePath tail{path_end(y.path, bgraph), {}};
      for (std::size_t j = y.path.letters.size(); j-- > 0;) {
        const Letter& l = y.path.letters[j];
        Chain step = generator(m, g, 1, l.gen);
        if (l.sign < 0)
          step = negate(act(step, path(CellElement::at_object(bg), CellElement::along(edge_path(bgraph, l.gen, -1))), g_));
        out = add(act(step, path(CellElement::at_object(bg), CellElement::along(tail)), g_), out);
        tail.letters.insert(tail.letters.begin(), l);
        tail.start = bgraph.letter_source(l);
      }
      return out;
    }
    for (const auto& term : y.chain.terms) {
      Chain piece = act(generator(m, g, n, term.gen), path(CellElement::at_object(bg), CellElement::along(term.act)), g_);
      out = add(out, scale(piece, term.coef));
    }
    return out;
  }

  const TensorComplex& t_;
  const CrossedComplex& a_;
  const CrossedComplex& b_;
  const DirectedGraph& g_;
};

std::int64_t sign_power(int k) { return k % 2 == 0 ? 1 : -1; }

enum class Rule { object, endpoints, both_one, one_high, high_one, both_high, zero_high, high_zero, none };

Rule boundary_rule(int m, int n) {
  if (m < 0 || n < 0) return Rule::none;
  if (m + n == 0) return Rule::object;
  if (m + n == 1) return Rule::endpoints;
  if (m == 1 && n == 1) return Rule::both_one;
  if (m == 1 && n >= 2) return Rule::one_high;
  if (m >= 2 && n == 1) return Rule::high_one;
  if (m >= 2 && n >= 2) return Rule::both_high;
  if (m == 0 && n >= 2) return Rule::zero_high;
  if (m >= 2 && n == 0) return Rule::high_zero;
  return Rule::none;
}

}  // namespace

CellElement theta(const TensorComplex& t, const CellElement& x, const CellElement& y) { return Theta(t)(x, y); }

std::vector<std::pair<int, int>> silent_bidegrees(int max_degree) {
  std::vector<std::pair<int, int>> out;
  for (int m = 0; m <= max_degree; ++m)
    for (int n = 0; m + n <= max_degree; ++n)
      if (m + n >= 1 && boundary_rule(m, n) == Rule::none) out.emplace_back(m, n);
  return out;
}

CellElement tensor_boundary(const TensorComplex& t, const TensorGenerator& gen) {
  Theta th(t);
  const auto& A = t.left;
  const auto& B = t.right;
  const auto& g = t.complex.graph();
  const int m = gen.a_degree, n = gen.b_degree;
  CellElement a = basis_element(A, m, gen.a_index), b = basis_element(B, n, gen.b_index);
  auto alpha_of = [](const CellElement& e) { return CellElement::at_object(e.path.start); };
  auto beta_of = [](const CrossedComplex& c, const CellElement& e) { return CellElement::at_object(beta(c, e)); };
  switch (boundary_rule(m, n)) {
    case Rule::both_one: {
      EdgePath p = inverse(th.path(beta_of(A, a), b), g);
      p = concat(p, inverse(th.path(a, alpha_of(b)), g), g);
      p = concat(p, th.path(alpha_of(a), b), g);
      p = concat(p, th.path(a, beta_of(B, b)), g);
      return CellElement::along(p);
    }
    case Rule::zero_high:
      return th(a, delta(B, n, gen.b_index));
    case Rule::high_zero:
      return th(delta(A, m, gen.a_index), b);
    case Rule::one_high: {
      Chain c = negate(th(a, delta(B, n, gen.b_index)).chain);
      c = add(c, negate(th(beta_of(A, a), b).chain));
      c = add(c, act(th(alpha_of(a), b).chain, th.path(a, beta_of(B, b)), g));
      return CellElement::of_chain(m + n - 1, c);
    }
    case Rule::high_one: {
      Chain c = scale(th(a, beta_of(B, b)).chain, sign_power(m + 1));
      c = add(c, scale(act(th(a, alpha_of(b)).chain, th.path(beta_of(A, a), b), g), sign_power(m)));
      c = add(c, th(delta(A, m, gen.a_index), b).chain);
      return CellElement::of_chain(m + n - 1, c);
    }
    case Rule::both_high: {
      Chain c = th(delta(A, m, gen.a_index), b).chain;
      c = add(c, scale(th(a, delta(B, n, gen.b_index)).chain, sign_power(m)));
      return CellElement::of_chain(m + n - 1, c);
    }
    default:
      fail(Errc::precondition_failed, "boundaries are defined for tensor generators of degree >= 2");
  }
}

TensorComplex tensor_complex(const CrossedComplex& a, const CrossedComplex& b, int max_degree) {
  if (max_degree < 0) fail(Errc::precondition_failed, "negative maximal degree");
  TensorComplex t;
  t.left = a;
  t.right = b;
  t.max_degree = max_degree;
  t.complex.name = a.name + " (x) " + b.name;
  t.generators.resize(max_degree + 1);
  auto& graph = t.complex.c1.graph;
  auto pair_name = [&](int m, int i, int n, int j) { return basis_name(a, m, i) + "~" + basis_name(b, n, j); };
  auto beta_of = [](const CrossedComplex& c, int d, int i) { return beta(c, basis_element(c, d, i)); };
  for (int k = 0; k <= max_degree; ++k)
    for (int m = 0; m <= k; ++m) {
      const int n = k - m;
      for (std::size_t i = 0; i < basis_count(a, m); ++i)
        for (std::size_t j = 0; j < basis_count(b, n); ++j) {
          const int ii = static_cast<int>(i), jj = static_cast<int>(j);
          int idx = static_cast<int>(t.generators[k].size());
          t.generators[k].push_back({m, ii, n, jj});
          t.lookup[{m, ii, n, jj}] = idx;
          std::string name = pair_name(m, ii, n, jj);
          if (k == 0) {
            graph.add_object(name);
          } else if (k == 1) {
            int s = m == 0 ? t.index_of(0, ii, 0, b.graph().edges[j].source) : t.index_of(0, a.graph().edges[i].source, 0, jj);
            int e = m == 0 ? t.index_of(0, ii, 0, b.graph().edges[j].target) : t.index_of(0, a.graph().edges[i].target, 0, jj);
            graph.add_edge(name, s, e);
          } else {
            int base = t.index_of(0, beta_of(a, m, ii), 0, beta_of(b, n, jj));
            t.complex.grow_level(k).generators.push_back({name, base, EdgePath{base, {}}, zero_chain(base)});
          }
        }
    }
  for (int k = 2; k <= max_degree; ++k)
    for (std::size_t i = 0; i < t.generators[k].size(); ++i) {
      CellElement d = tensor_boundary(t, t.generators[k][i]);
      auto& cell = t.complex.grow_level(k).generators[i];
      if (k == 2) cell.loop = d.path;
      else cell.boundary = d.chain;
    }
  Theta th(t);
  auto push_relation = [&](int degree, Chain c) {
    if (degree > max_degree || c.terms.empty()) return;
    t.complex.grow_level(degree).relations.push_back(std::move(c));
  };
  // relations of one factor paired with the basis of the other
  for (int side = 0; side < 2; ++side) {
    const CrossedComplex& rel = side == 0 ? a : b;
    const CrossedComplex& other = side == 0 ? b : a;
    auto pair = [&](const CellElement& r, const CellElement& o) { return side == 0 ? th(r, o) : th(o, r); };
    for (const auto& r : rel.c1.relations) {
      if (max_degree < 1) break;
      EdgePath loop = concat(r.lhs, inverse(r.rhs, rel.graph()), rel.graph());
      for (std::size_t q = 0; q < other.graph().objects.size(); ++q) {
        auto o = CellElement::at_object(static_cast<int>(q));
        t.complex.c1.relations.push_back({pair(CellElement::along(r.lhs), o).path, pair(CellElement::along(r.rhs), o).path});
      }
      for (int n = 1; 1 + n <= max_degree; ++n)
        for (std::size_t j = 0; j < basis_count(other, n); ++j)
          push_relation(1 + n, pair(CellElement::along(loop), basis_element(other, n, static_cast<int>(j))).chain);
    }
    for (int m = 2; m <= max_degree && m <= rel.top_degree(); ++m)
      for (const auto& r : rel.level(m).relations)
        for (int n = 0; m + n <= max_degree; ++n)
          for (std::size_t j = 0; j < basis_count(other, n); ++j)
            push_relation(m + n, pair(CellElement::of_chain(m, r), basis_element(other, n, static_cast<int>(j))).chain);
  }
  while (!t.complex.levels.empty() && t.complex.levels.back().generators.empty() && t.complex.levels.back().relations.empty())
    t.complex.levels.pop_back();
  return t;
}

TensorReport check_tensor(const TensorComplex& t, std::size_t bound) {
  TensorReport r;
  r.validation = validate_complex(t.complex, bound);
  r.dd_checked = r.validation.axiom("dd = 0").checked;
  r.silent = silent_bidegrees(t.max_degree);
  return r;
}

ComplexMorphism symmetry(const TensorComplex& ab, const TensorComplex& ba) {
  if (!(ab.left == ba.right) || !(ab.right == ba.left) || ab.max_degree != ba.max_degree)
    fail(Errc::precondition_failed, "symmetry needs A (x) B and B (x) A of the same degree");
  ComplexMorphism f;
  const auto& target = ba.complex.graph();
  for (const auto& g : ab.generators[0]) f.objects.push_back(ba.index_of(0, g.b_index, 0, g.a_index));
  if (ab.max_degree >= 1)
    for (const auto& g : ab.generators[1]) f.edges.push_back(edge_path(target, ba.index_of(g.b_degree, g.b_index, g.a_degree, g.a_index)));
  for (int k = 2; k <= ab.max_degree && k <= ab.complex.top_degree(); ++k) {
    std::vector<Chain> images;
    for (const auto& g : ab.generators[k]) {
      Chain c = generator_chain(ba.complex, k, ba.index_of(g.b_degree, g.b_index, g.a_degree, g.a_index));
      images.push_back(scale(c, g.a_degree * g.b_degree % 2 == 0 ? 1 : -1));
    }
    f.cells.push_back(images);
  }
  return f;
}

ComplexMorphism embed_second_factor(const TensorComplex& ab, int a0) {
  const auto& B = ab.right;
  if (a0 < 0 || a0 >= static_cast<int>(ab.left.graph().objects.size())) fail(Errc::object_not_found, "no such object in A");
  if (B.top_degree() > ab.max_degree) fail(Errc::precondition_failed, "tensor not computed up to the top degree of B");
  ComplexMorphism f;
  for (std::size_t q = 0; q < B.graph().objects.size(); ++q) f.objects.push_back(ab.index_of(0, a0, 0, static_cast<int>(q)));
  for (std::size_t e = 0; e < B.graph().edges.size(); ++e)
    f.edges.push_back(edge_path(ab.complex.graph(), ab.index_of(0, a0, 1, static_cast<int>(e))));
  for (int n = 2; n <= B.top_degree(); ++n) {
    std::vector<Chain> images;
    for (std::size_t h = 0; h < B.generator_count(n); ++h)
      images.push_back(generator_chain(ab.complex, n, ab.index_of(0, a0, n, static_cast<int>(h))));
    f.cells.push_back(images);
  }
  return f;
}

ComplexMorphism compose(const ComplexMorphism& f, const ComplexMorphism& g, const CrossedComplex& target) {
  ComplexMorphism out;
  for (int p : f.objects) out.objects.push_back(g.objects.at(p));
  for (const auto& e : f.edges) out.edges.push_back(map_path(g, e, target.graph()));
  for (std::size_t k = 0; k < f.cells.size(); ++k) {
    std::vector<Chain> images;
    for (const auto& c : f.cells[k]) images.push_back(map_chain(g, static_cast<int>(k) + 2, c, target));
    out.cells.push_back(images);
  }
  return out;
}

bool is_identity_on_generators(const ComplexMorphism& f, const CrossedComplex& c) {
  const auto& g = c.graph();
  if (f.objects.size() != g.objects.size() || f.edges.size() != g.edges.size()) return false;
  for (std::size_t p = 0; p < f.objects.size(); ++p)
    if (f.objects[p] != static_cast<int>(p)) return false;
  for (std::size_t e = 0; e < f.edges.size(); ++e)
    if (f.edges[e] != edge_path(g, static_cast<int>(e))) return false;
  for (int d = 2; d <= c.top_degree(); ++d) {
    if (f.cells_of(d).size() != c.generator_count(d)) return false;
    for (std::size_t i = 0; i < c.generator_count(d); ++i)
      if (!(f.cells_of(d)[i] == generator_chain(c, d, static_cast<int>(i)))) return false;
  }
  return true;
}

TensorComplex cylinder(const CrossedComplex& c, int max_degree) { return tensor_complex(interval_complex(), c, max_degree); }

MorphismCheck check_homotopy(const CrossedComplex& source, const CrossedComplex& target, const HomotopyData& h,
                             std::size_t bound) {
  const int top = source.top_degree() + 1;
  TensorComplex cyl = cylinder(source, top);
  auto on_cell = [&](int degree, int index) -> const Chain& {
    if (degree == 1) return h.on_edges.at(index);
    return h.on_cells.at(degree - 2).at(index);
  };
  auto fg = [&](int end) -> const ComplexMorphism& { return end == 0 ? h.f : h.g; };
  ComplexMorphism phi;
  try {
    for (const auto& g : cyl.generators[0]) phi.objects.push_back(fg(g.a_index).objects.at(g.b_index));
    if (top >= 1)
      for (const auto& g : cyl.generators[1])
        phi.edges.push_back(g.a_degree == 0 ? fg(g.a_index).edges.at(g.b_index) : h.on_objects.at(g.b_index));
    for (int k = 2; k <= top; ++k) {
      std::vector<Chain> images;
      for (const auto& g : cyl.generators[k])
        images.push_back(g.a_degree == 0 ? fg(g.a_index).cells_of(k).at(g.b_index) : on_cell(g.b_degree, g.b_index));
      phi.cells.push_back(images);
    }
  } catch (const std::out_of_range&) {
    fail(Errc::precondition_failed, "homotopy data does not cover every basis element");
  }
  while (!phi.cells.empty() && static_cast<int>(phi.cells.size()) + 1 > cyl.complex.top_degree()) phi.cells.pop_back();
  return check_morphism(cyl.complex, target, phi, bound);
}

}  // namespace xkit
