#include <doctest.h>

#include <chrono>
#include <set>

#include "xkit/error.hpp"
#include "xkit/parse.hpp"
#include "xkit/tensor.hpp"

using namespace xkit;

namespace {

constexpr std::size_t kBound = 4096;

GroupPresentation P(const char* text) { return parse_presentation(text); }

std::vector<CrossedComplex> catalogue() {
  return {interval_complex(), make_cgn(P("gens: x; rels: x^2"), 1, kBound), make_cgn(P("gens: x; rels: x^2"), 2, kBound),
          from_presentation(P("gens: x; rels: x^2")), point_complex()};
}

}  // namespace

TEST_CASE("interval squared is the square") {
  auto I = interval_complex();
  auto t = tensor_complex(I, I, 4);
  CHECK(t.complex.graph().objects.size() == 4);
  CHECK(t.complex.graph().edges.size() == 4);
  CHECK(t.complex.generator_count(2) == 1);
  CHECK(t.complex.top_degree() == 2);
  const auto& sq = t.complex.level(2).generators[0];
  CHECK(sq.name == "i~i");
  CHECK(t.complex.graph().objects[sq.base] == "1~1");
  CHECK(to_string(sq.loop, t.complex.graph()) == "1~i^-1*i~0^-1*0~i*i~1");
  CHECK(check_tensor(t, kBound).ok());
}

TEST_CASE("boundary formulas by bidegree") {
  auto pres = from_presentation(P("gens: x; rels: x^2"));
  auto t = tensor_complex(pres, pres, 4);
  const auto& c = t.complex;
  // the commutator square x~x and the (2,2) generator r~r
  CHECK(to_string(c.level(2).generators[t.index_of(1, 0, 1, 0)].loop, c.graph()) == "o~x^-1*x~o^-1*o~x*x~o");
  CellElement d = tensor_boundary(t, {0, 0, 2, 0});
  CHECK(d.degree == 1);
  CHECK(to_string(d.path, c.graph()) == "o~x^2");
  // m = n = 2: d(r~r) = d r ~ r + r ~ d r
  CellElement rr = tensor_boundary(t, {2, 0, 2, 0});
  Chain expected = add(theta(t, CellElement::along(pres.level(2).generators[0].loop), CellElement::of_chain(2, generator_chain(pres, 2, 0))).chain,
                       theta(t, CellElement::of_chain(2, generator_chain(pres, 2, 0)), CellElement::along(pres.level(2).generators[0].loop)).chain);
  CHECK(rr.chain == expected);
  auto c22 = make_cgn(P("gens: x; rels: x^2"), 2, kBound);
  auto t22 = tensor_complex(c22, c22, 4);
  REQUIRE(t22.complex.generator_count(4) == 1);
  CHECK(t22.complex.level(4).generators[0].boundary.terms.empty());
  CHECK(t22.complex.level(4).relations.size() == 2);
  CHECK(check_tensor(t22, kBound).ok());
}

TEST_CASE("theta follows the additivity rules") {
  auto pres = from_presentation(P("gens: x; rels: x^2"));
  auto t = tensor_complex(pres, pres, 3);
  const auto& g = t.complex.graph();
  auto x = CellElement::along(edge_path(pres.graph(), 0));
  auto xx = CellElement::along(concat(x.path, x.path, pres.graph()));
  auto xinv = CellElement::along(edge_path(pres.graph(), 0, -1));
  auto o = CellElement::at_object(0);
  // theta(x + x, x) = theta(x, x) + theta(x, x)^theta(x, o)
  Chain lhs = theta(t, xx, x).chain;
  Chain one = theta(t, x, x).chain;
  CHECK(lhs == add(one, act(one, theta(t, x, o).path, g)));
  // theta(x, x - x) is trivial up to the crossed module rule
  ComplexContext ctx(t.complex, kBound);
  Chain cancel = theta(t, x, CellElement::along(concat(x.path, xinv.path, pres.graph()))).chain;
  CHECK(ctx.at(0).is_zero(2, cancel));
  Chain back = theta(t, CellElement::along(concat(xinv.path, x.path, pres.graph())), x).chain;
  CHECK(ctx.at(0).is_zero(2, back));
}

TEST_CASE("dd = 0 over the catalogue") {
  auto start = std::chrono::steady_clock::now();
  auto cat = catalogue();
  for (const auto& a : cat)
    for (const auto& b : cat) {
      INFO(a.name << " (x) " << b.name);
      auto t = tensor_complex(a, b, 4);
      auto report = check_tensor(t, kBound);
      for (const auto& ax : report.validation.axioms) {
        INFO(ax.name);
        CHECK(ax.passed);
        CHECK_FALSE(ax.skipped);
        for (const auto& w : ax.witnesses) MESSAGE(w);
      }
      CHECK(report.silent.empty());
      std::size_t expected_dd = 0;
      for (int k = 3; k <= 4; ++k) expected_dd += t.complex.generator_count(k);
      CHECK(report.dd_checked == expected_dd);
    }
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(10));
}

TEST_CASE("unit object") {
  for (const auto& a : catalogue()) {
    auto t = tensor_complex(a, point_complex(), 4);
    CHECK(t.complex.graph().objects.size() == a.graph().objects.size());
    CHECK(t.complex.graph().edges.size() == a.graph().edges.size());
    for (int d = 2; d <= 4; ++d) CHECK(t.complex.generator_count(d) == a.generator_count(d));
  }
}

TEST_CASE("symmetry is an involutive isomorphism") {
  auto cat = catalogue();
  for (const auto& a : cat)
    for (const auto& b : cat) {
      INFO(a.name << " (x) " << b.name);
      auto ab = tensor_complex(a, b, 4);
      auto ba = tensor_complex(b, a, 4);
      auto s = symmetry(ab, ba);
      auto back = symmetry(ba, ab);
      auto check = check_morphism(ab.complex, ba.complex, s, kBound);
      for (const auto& p : check.problems) MESSAGE(p);
      CHECK(check.ok);
      CHECK(check.skipped.empty());
      CHECK(is_identity_on_generators(compose(s, back, ab.complex), ab.complex));
    }
}

TEST_CASE("embedding the second factor") {
  auto cat = catalogue();
  for (const auto& a : cat)
    for (const auto& b : cat) {
      auto ab = tensor_complex(a, b, 4);
      for (std::size_t a0 = 0; a0 < a.graph().objects.size(); ++a0) {
        auto f = embed_second_factor(ab, static_cast<int>(a0));
        CHECK(check_morphism(b, ab.complex, f, kBound).ok);
        std::set<int> objs(f.objects.begin(), f.objects.end());
        CHECK(objs.size() == f.objects.size());
        std::set<std::vector<Letter>> edges;
        for (const auto& e : f.edges) edges.insert(e.letters);
        CHECK(edges.size() == f.edges.size());
        for (const auto& level : f.cells) {
          std::set<int> gens;
          for (const auto& c : level) gens.insert(c.terms.at(0).gen);
          CHECK(gens.size() == level.size());
        }
      }
    }
  auto I = interval_complex();
  auto ii = tensor_complex(I, I, 2);
  auto f = embed_second_factor(ii, 0);
  CHECK(to_string(f.edges[0], ii.complex.graph()) == "0~i");
}

TEST_CASE("cylinder of a point is the interval") {
  auto cyl = cylinder(point_complex(), 3);
  auto I = interval_complex();
  const auto& c = cyl.complex;
  REQUIRE(c.graph().objects.size() == 2);
  REQUIRE(c.graph().edges.size() == 1);
  CHECK(c.top_degree() == 1);
  ComplexMorphism to{{0, 1}, {edge_path(c.graph(), 0)}, {}};
  ComplexMorphism from{{0, 1}, {edge_path(I.graph(), 0)}, {}};
  CHECK(check_morphism(I, c, to, kBound).ok);
  CHECK(check_morphism(c, I, from, kBound).ok);
  CHECK(is_identity_on_generators(compose(to, from, I), I));
  CHECK(is_identity_on_generators(compose(from, to, c), c));
  CHECK(c.graph().edges[0].source == c.graph().object_index("0~o"));
}

TEST_CASE("homotopies through the cylinder") {
  auto c3 = make_cgn(P("gens: c; rels: c^3"), 1, kBound);
  auto s3 = make_cgn(P("gens: a, b; rels: a^3, b^2, (a*b)^2"), 1, kBound);
  const auto& g = s3.graph();
  auto path = [&](const char* w) { return parse_path(parse_word(w), g, 0); };
  ComplexMorphism f{{0}, {path("a")}, {}};
  ComplexMorphism conj{{0}, {path("b^-1*a*b")}, {}};
  HomotopyData h{f, conj, {path("b")}, {zero_chain(0)}, {}};
  CHECK(check_homotopy(c3, s3, h, kBound).ok);
  HomotopyData constant{f, f, {path("id_o")}, {zero_chain(0)}, {}};
  CHECK(check_homotopy(c3, s3, constant, kBound).ok);
  HomotopyData wrong{f, conj, {path("a")}, {zero_chain(0)}, {}};
  auto check = check_homotopy(c3, s3, wrong, kBound);
  CHECK_FALSE(check.ok);
  CHECK_FALSE(check.problems.empty());
  CHECK_THROWS_AS(check_homotopy(c3, s3, HomotopyData{f, conj, {}, {}, {}}, kBound), Error);

  // degree 2: a homotopy on the presentation complex of C2 into itself
  auto pres = from_presentation(P("gens: x; rels: x^2"));
  ComplexMorphism id{{0}, {edge_path(pres.graph(), 0)}, {{generator_chain(pres, 2, 0)}}};
  HomotopyData trivial{id, id, {EdgePath{0, {}}}, {zero_chain(0)}, {{zero_chain(0)}}};
  CHECK(check_homotopy(pres, pres, trivial, kBound).ok);
}
