#include "xkit/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>

#include "xkit/catalogue.hpp"
#include "xkit/complex_eval.hpp"
#include "xkit/crossed_module.hpp"
#include "xkit/cube.hpp"
#include "xkit/double_groupoid.hpp"
#include "xkit/error.hpp"
#include "xkit/fox.hpp"
#include "xkit/free_crossed_module.hpp"
#include "xkit/module_kernel.hpp"
#include "xkit/tensor.hpp"

namespace xkit {

namespace {

// Counts checks and keeps the first few failures.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_++ < 3) notes_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  std::size_t checks() const { return checks_; }
  std::string summary(const std::string& counts) const {
    if (ok()) return counts;
    std::string out = std::to_string(failures_) + " failed";
    for (const auto& n : notes_) out += "; " + n;
    return out;
  }

 private:
  std::size_t checks_ = 0, failures_ = 0;
  std::vector<std::string> notes_;
};

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::vector<FreeWord> words_up_to(int max_len, int gens) {
  std::vector<FreeWord> out{FreeWord()};
  for (std::size_t start = 0, len = 1; static_cast<int>(len) <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = start; i < end; ++i)
      for (int x = 0; x < gens; ++x)
        for (int sign : {1, -1}) {
          auto letters = out[i].letters();
          letters.push_back({x, sign});
          FreeWord w(letters);
          if (w.length() == len) out.push_back(w);
        }
    start = end;
  }
  return out;
}

Outcome circle_pushout(std::size_t bound) {
  Tally t;
  const auto spec = parse_pushout(read_text_file(catalogue_path("circle.gpd")));
  const auto circle = glue(spec);
  std::string description;
  for (const auto& object : circle.graph.objects) {
    const auto pi = vertex_group(circle, object, maximal_tree(circle.graph));
    description = describe_group(pi, bound);
    t.expect(description == "free of rank 1", "vertex group at " + object + " is " + description);
    t.expect(pi.generators.size() == 1 && pi.relators.empty(), "presentation at " + object);
  }
  return {t.ok(), t.summary("vertex group " + description + " at both objects")};
}

Outcome crossed_module_axioms(std::size_t) {
  Tally t;
  const auto catalogue = crossed_module_catalogue();
  t.expect(catalogue.size() >= 10, "catalogue too small");
  for (const auto& x : catalogue) {
    t.expect(x.M.order() <= 24 && x.P.order() <= 24, x.name + " exceeds order 24");
    const auto report = validate(x);
    t.expect(report.ok(), x.name + " fails CM1/CM2");
    const auto c = consequences(x);
    t.expect(c.im_normal, x.name + ": image not normal");
    t.expect(c.ker_central, x.name + ": kernel not central");
  }
  return {t.ok(), t.summary(std::to_string(catalogue.size()) + " instances from 4 constructors")};
}

Outcome free_crossed_module(std::size_t bound) {
  Tally t;
  std::size_t pairs = 0;
  for (const char* text : {"gens: x; rels: x^2", "gens: x, y; rels: x^3, y^2, (x*y)^2"}) {
    FreeCrossedModule fcm(parse_presentation(text), bound);
    const auto& p = fcm.presentation();
    std::vector<FreeWord> conj{FreeWord(), p.word("x"), p.word("x^-1"), p.word("x^2")};
    if (p.generators.size() > 1) conj.push_back(p.word("y*x"));
    for (int r = 0; r < fcm.relator_count(); ++r)
      for (int s = 0; s < fcm.relator_count(); ++s)
        for (const auto& a : conj)
          for (const auto& b : conj)
            for (int e1 : {1, -1})
              for (int e2 : {1, -1}) {
                const FcmTriple first{s, e1, a}, second{r, e2, b};
                const FcmElement lhs{{first, second}};
                t.expect(fcm.equal(lhs, peiffer_swap(first, second, p.relators)), "Peiffer pair in " + std::string(text));
                ++pairs;
              }
  }
  const auto p = parse_presentation("gens: x; rels: x^2");
  FreeCrossedModule fcm(p, bound);
  const FcmElement witness{{{0, 1, FreeWord()}, {0, -1, p.word("x")}}};
  t.expect(fcm.boundary(witness).is_identity(), "witness boundary");
  const auto h = fcm.h2(witness);
  t.expect(!h.at(0).is_zero(), "h2 of the witness vanishes");
  t.expect(!fcm.equal(witness, FcmElement{}), "witness equals 1");
  return {t.ok(), t.summary(std::to_string(pairs) + " Peiffer pairs; r1 - r1^x is a nontrivial identity")};
}

Outcome fox_calculus(std::size_t bound) {
  Tally t;
  const auto words = words_up_to(5, 2);
  const auto g = enumerate_fp_group(parse_presentation("gens: x, y; rels: x^3, y^2, (x*y)^2"), bound);
  for (const auto& u : words)
    for (const auto& v : words)
      for (int x = 0; x < 2; ++x) {
        const ZG lhs = fox_derivative(u * v, x, g);
        const ZG rhs = right_translate(fox_derivative(u, x, g), g.evaluate(v), g.group()) + fox_derivative(v, x, g);
        t.expect(lhs == rhs, "derivation law");
      }
  const std::size_t law_checks = t.checks();

  const FreeWord x = FreeWord::generator(0);
  for (int n = 1; n <= 5; ++n) {
    ZF expected;
    for (int k = 0; k < n; ++k) expected.add_term(x.pow(k), 1);
    t.expect(fox_derivative(x.pow(n), 0) == expected, "d(x^" + std::to_string(n) + ")/dx");
  }

  // sum_x (x - 1)(dr/dx) = r - 1 in Z[F] gives d1 d2 = 0 for any presentation
  const auto files = catalogue_files(".pres");
  std::size_t finite = 0;
  for (const auto& file : files) {
    const auto p = parse_presentation(read_text_file(catalogue_path(file)));
    for (const auto& r : p.relators) {
      ZF total;
      for (std::size_t gen = 0; gen < p.generators.size(); ++gen) {
        const int gi = static_cast<int>(gen);
        total += multiply(ZF::unit(FreeWord::generator(gi)) - ZF::unit(FreeWord()), fox_derivative(r, gi));
      }
      t.expect(total == ZF::unit(r) - ZF::unit(FreeWord()), file + ": fundamental formula");
    }
    try {
      const auto j = fox_jacobian(p, bound);
      const auto composite = compose_maps(j.matrix, j.d1(), 1, j.group.group());
      for (const auto& row : composite) t.expect(row.at(0).is_zero(), file + ": d1 d2 != 0");
      ++finite;
    } catch (const Error& e) {
      if (e.code() != Errc::unbounded) throw;
    }
  }
  for (int n = 2; n <= 5; ++n) {
    const GroupPresentation p{{"x"}, {FreeWord::generator(0).pow(n)}};
    const auto id = identities_module(p, bound);
    t.expect(id.invariants.free_rank == static_cast<std::size_t>(n - 1) && id.invariants.torsion.empty(),
             "identities of x^" + std::to_string(n) + " have rank " + std::to_string(id.invariants.free_rank));
  }
  return {t.ok(), t.summary(std::to_string(law_checks) + " derivation checks, " + std::to_string(files.size()) +
                            " presentations (" + std::to_string(finite) + " finite), ranks 1..4")};
}

Outcome derived_diagram(std::size_t bound) {
  Tally t;
  std::size_t elements = 0;
  for (const char* text : {"gens: x; rels: x^2", "gens: x; rels: x^3"}) {
    const auto r = derived_diagram_check(parse_presentation(text), 2, 1, bound);
    t.expect(r.upper_square_ok, std::string(text) + ": d2 h2 != h1 mu");
    t.expect(r.lower_square_ok, std::string(text) + ": d1 h1 != h0 phi");
    t.expect(r.elements_checked > 0 && r.words_checked > 0, "nothing checked");
    elements += r.elements_checked;
  }
  return {t.ok(), t.summary(std::to_string(elements) + " crossed module elements")};
}

Outcome double_groupoid_laws(std::size_t) {
  Tally t;
  std::string counts;
  const auto catalogue = crossed_module_catalogue();
  auto find = [&](const std::string& name) {
    for (const auto& x : catalogue)
      if (x.name == name) return x;
    fail(Errc::precondition_failed, "missing " + name);
  };
  for (const char* name : {"C2 -> C2", "A3 in S3", "C4 -> C2", "C3 sign C2-module"}) {
    const auto start = std::chrono::steady_clock::now();
    const DoubleGroupoid g(find(name));
    const auto report = run_law_suite(g);
    for (const auto& c : report.checks) t.expect(c.ok(), std::string(name) + " / " + c.name + ": " + c.witness);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s: %llu shells, %llu interchange arrays, %.1f s", counts.empty() ? "" : "; ",
                  name, static_cast<unsigned long long>(report.check("hcl agrees with five-face formula").cases),
                  static_cast<unsigned long long>(report.check("interchange").cases), secs);
    counts += buf;
    if (std::string(name) == "A3 in S3") t.expect(secs < 60, "A3 in S3 took longer than 60 s");
  }
  return {t.ok(), t.summary(counts)};
}

Outcome collapsing(std::size_t) {
  Tally t;
  for (int n = 1; n <= 4; ++n) {
    std::size_t expected = 1;
    for (int i = 0; i < n; ++i) expected *= 3;
    expected = (expected - 1) / 2;
    const auto cube = full_cube(n);
    for (const auto& v : cube.cells) {
      if (v.dimension() != 0) continue;
      const auto steps = collapse_to_vertex(n, v);
      t.expect(steps.size() == expected, "certificate length for " + v.spec);
      const auto end = replay(cube, steps);
      t.expect(end.size() == 1 && *end.cells.begin() == v, "replay to " + v.spec);
    }
  }
  auto C = [](const char* s) { return cube_cell(s); };
  struct Fixture {
    CubeComplex b, c;
  };
  const std::vector<Fixture> fixtures = {
      {full_cube(1), closure(1, {C("0")})},
      {full_cube(2), closure(2, {C("0*"), C("1*"), C("*0"), C("*1")})},
      {full_cube(2), full_cube(2)},
      {full_cube(2), closure(2, {C("00")})},
      {closure(3, {C("**0"), C("0**")}), closure(3, {C("0*0")})},
  };
  for (const auto& f : fixtures)
    t.expect(replay(cylinder_complex(f.b), product_collapse(f.b, f.c)) == product_collapse_target(f.b, f.c),
             "product collapse replay");

  const auto cell = C("***");
  const auto fs = faces(cell);
  std::vector<PartialBox> boxes;
  for (unsigned mask = 1; mask < (1u << fs.size()); ++mask) {
    std::set<CubeCell> gens;
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (mask >> i & 1u) gens.insert(fs[i]);
    try {
      boxes.push_back(partial_box_on(cell, gens));
    } catch (const Error& e) {
      if (e.code() != Errc::not_partial_box) throw;
    }
  }
  std::size_t pairs = 0;
  for (const auto& outer : boxes)
    for (const auto& inner : boxes) {
      const auto og = outer.generators(), ig = inner.generators();
      if (!std::includes(og.begin(), og.end(), ig.begin(), ig.end())) continue;
      ++pairs;
      const auto check = verify_box_chain(box_chain(outer, inner));
      t.expect(check.ok, check.problems.empty() ? "box chain" : check.problems.front());
    }
  return {t.ok(), t.summary("vertex collapses n = 1..4, " + std::to_string(fixtures.size()) + " product fixtures, " +
                            std::to_string(pairs) + " box pairs in a 3-cell")};
}

std::vector<CrossedComplex> tensor_catalogue(std::size_t bound) {
  const auto c2 = parse_presentation("gens: x; rels: x^2");
  return {interval_complex(), make_cgn(c2, 1, bound), make_cgn(c2, 2, bound), from_presentation(c2),
          point_complex()};
}

Outcome tensor_products(std::size_t bound) {
  Tally t;
  const auto catalogue = tensor_catalogue(bound);
  std::size_t dd = 0;
  for (const auto& a : catalogue)
    for (const auto& b : catalogue) {
      const std::string pair = a.name + " (x) " + b.name;
      const auto ab = tensor_complex(a, b, 4);
      const auto report = check_tensor(ab, bound);
      t.expect(report.ok(), pair + ": validation");
      for (const auto& ax : report.validation.axioms) t.expect(!ax.skipped, pair + ": " + ax.name + " skipped");
      dd += report.dd_checked;
      const auto ba = tensor_complex(b, a, 4);
      const auto s = symmetry(ab, ba);
      t.expect(check_morphism(ab.complex, ba.complex, s, bound).ok, pair + ": symmetry not a morphism");
      t.expect(is_identity_on_generators(compose(s, symmetry(ba, ab), ab.complex), ab.complex),
               pair + ": symmetry not an involution");
      for (std::size_t a0 = 0; a0 < a.graph().objects.size(); ++a0) {
        const auto f = embed_second_factor(ab, static_cast<int>(a0));
        t.expect(check_morphism(b, ab.complex, f, bound).ok, pair + ": embedding not a morphism");
        std::set<int> objects(f.objects.begin(), f.objects.end());
        std::set<std::vector<Letter>> edges;
        for (const auto& e : f.edges) edges.insert(e.letters);
        bool injective = objects.size() == f.objects.size() && edges.size() == f.edges.size();
        for (const auto& level : f.cells) {
          std::set<int> gens;
          for (const auto& c : level) gens.insert(c.terms.at(0).gen);
          injective = injective && gens.size() == level.size();
        }
        t.expect(injective, pair + ": embedding not injective");
      }
    }
  const auto cyl = cylinder(point_complex(), 3);
  const auto I = interval_complex();
  const auto& c = cyl.complex;
  const bool shape = c.graph().objects.size() == 2 && c.graph().edges.size() == 1 && c.top_degree() == 1;
  t.expect(shape, "cylinder of a point has the wrong shape");
  if (shape) {
    const ComplexMorphism to{{0, 1}, {edge_path(c.graph(), 0)}, {}};
    const ComplexMorphism from{{0, 1}, {edge_path(I.graph(), 0)}, {}};
    t.expect(check_morphism(I, c, to, bound).ok && check_morphism(c, I, from, bound).ok, "cylinder maps");
    t.expect(is_identity_on_generators(compose(to, from, I), I) && is_identity_on_generators(compose(from, to, c), c),
             "cylinder of a point is not the interval");
  }
  return {t.ok(), t.summary(std::to_string(catalogue.size() * catalogue.size()) + " products, " + std::to_string(dd) +
                            " dd checks; symmetry, embedding, cylinder")};
}

Outcome crossed_complexes(std::size_t bound) {
  Tally t;
  const auto P = [](const char* text) { return parse_presentation(text); };
  std::vector<CrossedComplex> complexes;
  for (const char* g : {"gens: x; rels: x^2", "gens: x; rels: x^6"})
    for (int n : {1, 2, 3}) complexes.push_back(make_cgn(P(g), n, bound));
  complexes.push_back(make_cg1mn(P("gens: a, b; rels: a^3, b^2, (a*b)^2"), P("gens: m; rels:"),
                                 {{FreeWord::generator(0)}, {FreeWord::generator(0, -1)}}, 2, bound));
  complexes.push_back(from_presentation(P("gens: x; rels: x^3")));
  complexes.push_back(from_presentation(P("gens: a, b; rels: a^3, b^2, (a*b)^2")));
  const auto small = tensor_catalogue(bound);
  for (const auto& a : small)
    for (const auto& b : small) complexes.push_back(tensor_complex(a, b, 4).complex);
  for (const auto& c : complexes) t.expect(validate_complex(c, bound).ok(), c.name + " fails validation");

  const auto c63 = make_cgn(P("gens: x; rels: x^6"), 3, bound);
  for (int n = 2; n <= 4; ++n) {
    const auto h = homology(c63, n, 0, bound);
    const bool expected = n == 3 ? (h.free_rank == 0 && h.torsion == std::vector<std::int64_t>{6}) : h.is_trivial();
    t.expect(expected, "H" + std::to_string(n) + "(C(C6,3)) = " + to_string(h));
  }
  const ComplexEvaluator ev(from_presentation(P("gens: x; rels: x^3")), 0, bound);
  t.expect(ev.pi1_finite() && ev.group().order() == 3, "pi1 of x | x^3 is not of order 3");
  return {t.ok(), t.summary(std::to_string(complexes.size()) + " complexes valid; H3(C(C6,3)) = C6 only; |pi1| = 3")};
}

struct Criterion {
  int id;
  const char* suite;
  const char* title;
  double limit;
  std::function<Outcome(std::size_t)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "groupoid", "circle pushout", 1, circle_pushout},
      {2, "xmod", "crossed module axioms", 5, crossed_module_axioms},
      {3, "fcm", "free crossed module", 1, free_crossed_module},
      {4, "fox", "Fox calculus", 5, fox_calculus},
      {5, "diagram", "derived module diagram", 5, derived_diagram},
      {6, "dg", "double groupoid laws", 60, double_groupoid_laws},
      {7, "cube", "collapsing", 10, collapsing},
      {8, "tensor", "tensor product", 10, tensor_products},
      {9, "crs", "crossed complexes", 5, crossed_complexes},
  };
  return all;
}

}  // namespace

bool SuiteReport::ok() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& r) { return r.passed; });
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out{"all"};
  for (const auto& c : criteria()) out.push_back(c.suite);
  return out;
}

SuiteReport run_acceptance(const std::string& suite, std::size_t bound) {
  SuiteReport report{suite, {}};
  for (const auto& c : criteria()) {
    if (suite != "all" && suite != c.suite && suite != std::to_string(c.id)) continue;
    CriterionResult r{c.id, c.title, false, 0, c.limit, {}};
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto outcome = c.run(bound);
      r.passed = outcome.passed;
      r.detail = outcome.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds > r.limit_seconds) {
      r.passed = false;
      r.detail += "; over the time limit";
    }
    report.criteria.push_back(std::move(r));
  }
  if (report.criteria.empty()) fail(Errc::unknown_suite, "no suite named '" + suite + "'");
  return report;
}

std::string format_line(const CriterionResult& r) {
  char head[128];
  std::snprintf(head, sizeof head, "%s  %d  %-24s %7.2f s (limit %g s)  ", r.passed ? "PASS" : "FAIL", r.id,
                r.title.c_str(), r.seconds, r.limit_seconds);
  return head + r.detail;
}

}  // namespace xkit
