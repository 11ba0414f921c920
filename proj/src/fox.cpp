#include "xkit/fox.hpp"

#include <algorithm>
#include <functional>

#include "xkit/error.hpp"

namespace xkit {

ZF fox_derivative(const FreeWord& w, int x) {
  ZF out;
  const auto& letters = w.letters();
  // suffix[i] is the word after position i
  std::vector<Letter> suffix;
  for (std::size_t k = letters.size(); k-- > 0;) {
    if (letters[k].gen == x) {
      if (letters[k].sign > 0) {
        out.add_term(FreeWord(suffix), 1);
      } else {
        std::vector<Letter> with = suffix;
        with.insert(with.begin(), letters[k]);
        out.add_term(FreeWord(with), -1);
      }
    }
    suffix.insert(suffix.begin(), letters[k]);
  }
  return out;
}

ZG fox_derivative(const FreeWord& w, int x, const EnumeratedGroup& g) {
  ZG out;
  const auto& letters = w.letters();
  const FiniteGroup& G = g.group();
  int suffix = 0;
  for (std::size_t k = letters.size(); k-- > 0;) {
    int letter = g.generator_image(letters[k].gen);
    if (letters[k].sign < 0) letter = G.inv(letter);
    if (letters[k].gen == x) {
      if (letters[k].sign > 0) out.add_term(suffix, 1);
      else out.add_term(G.mul(letter, suffix), -1);
    }
    suffix = G.mul(letter, suffix);
  }
  return out;
}

std::vector<ZG> h1(const FreeWord& w, const EnumeratedGroup& g, std::size_t generators) {
  std::vector<ZG> out;
  for (std::size_t x = 0; x < generators; ++x) out.push_back(fox_derivative(w, static_cast<int>(x), g));
  return out;
}

ZG h0(int element) { return ZG::unit(element) - ZG::unit(0); }

ModuleMatrix FoxJacobian::d1() const {
  ModuleMatrix out;
  for (std::size_t x = 0; x < generators(); ++x) out.push_back({h0(group.generator_image(static_cast<int>(x)))});
  return out;
}

FoxJacobian fox_jacobian(const GroupPresentation& p, std::size_t bound) {
  FoxJacobian j{p, enumerate_fp_group(p, bound), {}};
  for (const auto& r : p.relators) j.matrix.push_back(h1(r, j.group, p.generators.size()));
  return j;
}

namespace {

bool all_zero(const ModuleMatrix& m) {
  for (const auto& row : m)
    for (const auto& c : row)
      if (!c.is_zero()) return false;
  return true;
}

bool rows_in_lattice(const IntMatrix& rows, const IntMatrix& lattice) {
  for (std::size_t i = 0; i < rows.rows(); ++i)
    if (!solve_left(lattice, rows.row(i))) return false;
  return true;
}

}  // namespace

DerivedDiagramReport derived_diagram_check(const FreeCrossedModule& fcm, const std::vector<FcmElement>& elements,
                                           const std::vector<FreeWord>& words) {
  DerivedDiagramReport r;
  const auto& p = fcm.presentation();
  const auto& G = fcm.quotient().group();
  const std::size_t X = p.generators.size();
  FoxJacobian j{p, fcm.quotient(), {}};
  for (const auto& rel : p.relators) j.matrix.push_back(h1(rel, j.group, X));
  const auto d1 = j.d1();
  for (const auto& e : elements) {
    ++r.elements_checked;
    auto down = apply_map(fcm.h2(e), j.matrix, X, G);
    auto across = h1(fcm.boundary(e), fcm.quotient(), X);
    if (down != across) {
      r.upper_square_ok = false;
      if (r.problems.size() < 5) r.problems.push_back("d2 h2 != h1 mu at " + fcm.render(e));
    }
  }
  for (const auto& w : words) {
    ++r.words_checked;
    auto down = apply_map(h1(w, fcm.quotient(), X), d1, 1, G);
    if (down.front() != h0(fcm.quotient().evaluate(w))) {
      r.lower_square_ok = false;
      if (r.problems.size() < 5) r.problems.push_back("d1 h1 != h0 phi at " + p.render(w));
    }
  }
  r.d1d2_zero = all_zero(compose_maps(j.matrix, d1, 1, G));
  if (!r.d1d2_zero) r.problems.push_back("d1 d2 is not zero");
  IntMatrix image = expand_map(j.matrix, X, G);
  IntMatrix kernel = left_kernel(expand_map(d1, 1, G));
  r.exact_at_derived = rows_in_lattice(kernel, image) && rows_in_lattice(image, kernel);
  if (!r.exact_at_derived) r.problems.push_back("Ker d1 and Im d2 differ");
  return r;
}

DerivedDiagramReport derived_diagram_check(const GroupPresentation& p, int max_triples, int max_conjugator,
                                           std::size_t bound) {
  FreeCrossedModule fcm(p, bound);
  std::vector<FreeWord> conjugators{FreeWord()};
  for (std::size_t start = 0, len = 1; static_cast<int>(len) <= max_conjugator + 2; ++len) {
    std::size_t end = conjugators.size();
    for (std::size_t i = start; i < end; ++i)
      for (std::size_t x = 0; x < p.generators.size(); ++x)
        for (int sign : {1, -1}) {
          auto letters = conjugators[i].letters();
          letters.push_back({static_cast<int>(x), sign});
          FreeWord w(letters);
          if (w.length() == len) conjugators.push_back(w);
        }
    start = end;
  }
  std::vector<FreeWord> short_conj;
  for (const auto& w : conjugators)
    if (static_cast<int>(w.length()) <= max_conjugator) short_conj.push_back(w);
  std::vector<FcmElement> elements{FcmElement{}};
  for (std::size_t start = 0, len = 1; static_cast<int>(len) <= max_triples; ++len) {
    std::size_t end = elements.size();
    for (std::size_t i = start; i < end; ++i)
      for (int rel = 0; rel < fcm.relator_count(); ++rel)
        for (int sign : {1, -1})
          for (const auto& q : short_conj) {
            FcmElement e = elements[i];
            e.triples.push_back({rel, sign, q});
            elements.push_back(std::move(e));
          }
    start = end;
  }
  return derived_diagram_check(fcm, elements, conjugators);
}

IdentitiesModule identities_module(const GroupPresentation& p, std::size_t bound) {
  auto j = fox_jacobian(p, bound);
  IdentitiesModule out;
  out.kernel = module_kernel(j.matrix, j.generators(), j.group.group());
  IntMatrix expanded = expand_map(j.matrix, j.generators(), j.group.group());
  for (auto d : smith_diagonal(expanded)) out.jacobian_rank += d != 0;
  out.invariants.free_rank = expanded.rows() - out.jacobian_rank;
  return out;
}

std::vector<int> OperatorChainComplex::failing_squares() const {
  std::vector<int> out;
  for (std::size_t n = 2; n < boundaries.size(); ++n) {
    auto composite = compose_maps(boundaries[n], boundaries[n - 1], ranks[n - 2], group);
    if (all_zero(composite)) continue;
    bool inside = n - 2 < relations.size() && !relations[n - 2].empty();
    if (inside) {
      IntMatrix lattice = translate_closure(relations[n - 2], ranks[n - 2], group);
      for (const auto& row : composite) {
        auto v = expand_vector(row, group);
        if (std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; })) continue;
        if (!solve_left(lattice, v)) inside = false;
      }
    }
    if (!inside) out.push_back(static_cast<int>(n));
  }
  return out;
}

OperatorChainComplex nabla(const GroupPresentation& p, std::size_t bound) {
  auto j = fox_jacobian(p, bound);
  OperatorChainComplex c;
  c.group = j.group.group();
  c.ranks = {1, p.generators.size(), p.relators.size()};
  c.basis_names = {{"*"}, p.generators, {}};
  for (std::size_t r = 0; r < p.relators.size(); ++r) c.basis_names[2].push_back("r" + std::to_string(r + 1));
  c.boundaries = {{}, j.d1(), j.matrix};
  if (p.relators.empty()) {
    c.ranks.pop_back();
    c.basis_names.pop_back();
    c.boundaries.pop_back();
  }
  return c;
}

std::string to_string(const OperatorChainComplex& c) {
  std::string out = "operator group of order " + std::to_string(c.group.order()) + "\n";
  for (std::size_t n = 0; n < c.ranks.size(); ++n) {
    out += "degree " + std::to_string(n) + ": rank " + std::to_string(c.ranks[n]);
    if (n < c.basis_names.size() && !c.basis_names[n].empty()) {
      out += " [";
      for (std::size_t i = 0; i < c.basis_names[n].size(); ++i) out += (i ? ", " : "") + c.basis_names[n][i];
      out += "]";
    }
    out += "\n";
    if (n == 0) continue;
    for (std::size_t i = 0; i < c.boundaries[n].size(); ++i) {
      out += "  d(" + c.basis_names[n][i] + ") =";
      bool any = false;
      for (std::size_t k = 0; k < c.boundaries[n][i].size(); ++k) {
        const auto& coef = c.boundaries[n][i][k];
        if (coef.is_zero()) continue;
        out += std::string(any ? " +" : " ") + " " + c.basis_names[n - 1][k] + ".(" + to_string(coef, c.group.labels()) + ")";
        any = true;
      }
      out += any ? "\n" : " 0\n";
    }
  }
  return out;
}

}  // namespace xkit
