#include <doctest.h>

#include "xkit/complex_eval.hpp"
#include "xkit/error.hpp"
#include "xkit/parse.hpp"

using namespace xkit;

namespace {

constexpr std::size_t kBound = 4096;

GroupPresentation P(const char* text) { return parse_presentation(text); }
EdgePath path(const char* text, const DirectedGraph& g) { return parse_path(parse_word(text), g); }

AbelianInvariants cyclic(std::int64_t n) { return n == 1 ? AbelianInvariants{} : AbelianInvariants{{n}, 0}; }
AbelianInvariants free_of(std::size_t r) { return AbelianInvariants{{}, r}; }

CrossedComplex s3_with_z2() {
  return make_cg1mn(P("gens: a, b; rels: a^3, b^2, (a*b)^2"), P("gens: m; rels:"), {{FreeWord({{0, 1}})}, {FreeWord({{0, 1}})}}, 2,
                    kBound);
}

}  // namespace

TEST_CASE("standard complexes validate") {
  for (const char* g : {"gens: x; rels: x^2", "gens: x; rels: x^3", "gens: x; rels: x^6", "gens: x, y; rels: x^2, y^2, x*y*x^-1*y^-1"})
    for (int n : {1, 2, 3}) {
      auto c = make_cgn(P(g), n, kBound);
      INFO(g << " n=" << n);
      auto report = validate_complex(c, kBound);
      CHECK(report.ok());
    }
  CHECK(validate_complex(s3_with_z2(), kBound).ok());
  CHECK(validate_complex(from_presentation(P("gens: a, b; rels: a^3, b^2, (a*b)^2")), kBound).ok());
  CHECK(validate_complex(interval_complex(), kBound).ok());
  CHECK(validate_complex(point_complex(), kBound).ok());
  CHECK_THROWS_AS(make_cgn(P("gens: a, b; rels: a^3, b^2, (a*b)^2"), 2, kBound), Error);
}

TEST_CASE("injected violations are reported") {
  auto c = parse_complex("objects: o\ndeg1: x: o->o\ndeg2: r@o: x^2\ndeg3: s@o: r\n");
  auto report = validate_complex(c, kBound);
  CHECK_FALSE(report.ok());
  CHECK_FALSE(report.axiom("dd = 0").passed);
  CHECK(report.axiom("boundary placement").passed);

  auto fixed = parse_complex("objects: o\ndeg1: x: o->o\ndeg2: r@o: x^2\ndeg3: s@o: r - r^x\n");
  CHECK(validate_complex(fixed, kBound).ok());

  CHECK_THROWS_AS(parse_complex("objects: p, q\ndeg1: e: p->q\ndeg2: r@p: e\n"), Error);
  auto misplaced = parse_complex("objects: p, q\ndeg1: e: p->q\ndeg2: r@p: 1\n");
  misplaced.levels[0].generators[0].loop = path("e", misplaced.graph());
  CHECK_FALSE(validate_complex(misplaced, kBound).axiom("boundary placement").passed);

  auto relation = parse_complex("objects: o\ndeg1: x: o->o\ndeg2: r@o: x^2\nrel2: r\n");
  CHECK_FALSE(validate_complex(relation, kBound).axiom("relations are cycles").passed);
}

TEST_CASE("fundamental group of a presentation complex") {
  ComplexEvaluator ev(from_presentation(P("gens: x; rels: x^3")), 0, kBound);
  CHECK(ev.pi1_finite());
  CHECK(ev.group().order() == 3);
  ComplexEvaluator s3(s3_with_z2(), 0, kBound);
  CHECK(s3.group().order() == 6);
  CHECK_THROWS_AS(ComplexEvaluator(from_presentation(P("gens: x, y; rels:")), 0, kBound), Error);
  ComplexEvaluator trivial(from_presentation(P("gens: x, y; rels:")), 0, kBound, true);
  CHECK_FALSE(trivial.pi1_finite());
  CHECK(trivial.group().order() == 1);
}

TEST_CASE("homology of C(G,n) is G in degree n") {
  for (int k : {2, 3, 6})
    for (int n : {2, 3}) {
      std::string g = "gens: x; rels: x^" + std::to_string(k);
      auto c = make_cgn(P(g.c_str()), n, kBound);
      for (int d = 2; d <= 4; ++d) {
        INFO("k=" << k << " n=" << n << " d=" << d);
        CHECK(homology(c, d, 0, kBound) == (d == n ? cyclic(k) : AbelianInvariants{}));
      }
    }
  auto klein = make_cgn(P("gens: x, y; rels: x^2, y^2, x*y*x^-1*y^-1"), 3, kBound);
  CHECK(homology(klein, 3, 0, kBound) == AbelianInvariants{{2, 2}, 0});
  auto z = make_cgn(P("gens: x; rels:"), 2, kBound);
  CHECK(homology(z, 2, 0, kBound) == free_of(1));
}

TEST_CASE("homology of small chain complexes") {
  auto doubling = parse_complex("objects: o\ndeg3: a@o: 0\ndeg4: b@o: 2*a\n");
  CHECK(validate_complex(doubling, kBound).ok());
  CHECK(homology(doubling, 3, 0, kBound) == cyclic(2));
  CHECK(homology(doubling, 4, 0, kBound).is_trivial());

  auto iso = parse_complex("objects: o\ndeg3: a@o: 0\ndeg4: b@o: a\n");
  CHECK(homology(iso, 3, 0, kBound).is_trivial());
  CHECK(homology(iso, 4, 0, kBound).is_trivial());

  auto bad = parse_complex("objects: o\ndeg3: a@o: 0\ndeg4: b@o: a\ndeg5: c@o: b\n");
  CHECK_FALSE(validate_complex(bad, kBound).ok());
  CHECK_THROWS_AS(homology(bad, 4, 0, kBound), Error);
}

TEST_CASE("second homology sees identities among relations") {
  // pi2 of the presentation complex of C3 is Z[C3]/(N), free abelian of rank 2
  CHECK(homology(from_presentation(P("gens: x; rels: x^3")), 2, 0, kBound) == free_of(2));
  CHECK(homology(from_presentation(P("gens: x; rels: x^2")), 2, 0, kBound) == free_of(1));
  auto killed = parse_complex("objects: o\ndeg1: x: o->o\ndeg2: r@o: x^2\ndeg3: s@o: r - r^x\n");
  CHECK(homology(killed, 2, 0, kBound).is_trivial());
  // (1 + x) s is a cycle that nothing bounds yet
  CHECK(homology(killed, 3, 0, kBound) == free_of(1));
  CHECK(homology(s3_with_z2(), 2, 0, kBound) == free_of(1));
  // free group: trivial action is visible, H2 of a wedge of circles vanishes
  CHECK(homology(from_presentation(P("gens: x, y; rels:")), 2, 0, kBound).is_trivial());
  CHECK_THROWS_AS(homology(from_presentation(P("gens: x, y; rels: x*y*x^-1*y^-1")), 2, 0, kBound), Error);
}

TEST_CASE("twisted module") {
  // Z with C2 acting by -1 in degree 2: coinvariants do not matter, H2 is the module
  auto sign = make_cg1mn(P("gens: t; rels: t^2"), P("gens: m; rels:"), {{FreeWord({{0, -1}})}}, 2, kBound);
  CHECK(validate_complex(sign, kBound).ok());
  CHECK(homology(sign, 2, 0, kBound) == free_of(1));
  // t acting by -1 on C3 is an automorphism; on C3 x with t^3 it is not well defined
  auto c3 = make_cg1mn(P("gens: t; rels: t^2"), P("gens: m; rels: m^3"), {{FreeWord({{0, -1}})}}, 3, kBound);
  CHECK(homology(c3, 3, 0, kBound) == cyclic(3));
  CHECK_THROWS_AS(make_cg1mn(P("gens: t; rels: t^3"), P("gens: m; rels:"), {{FreeWord({{0, -1}})}}, 2, kBound), Error);
}

TEST_CASE("text round trip") {
  const char* texts[] = {
      "objects: o\ndeg1: x: o->o\nrel1: x^2 = id_o\ndeg2: r@o: 1\ndeg3: s@o: r - r^x\n",
      "objects: p, q\ndeg1: e: p->q, f: q->p\ndeg2: r@p: e*f\ndeg3: s@q: r^e - r^e\nrel3: 2*s\n",
  };
  for (const char* t : texts) {
    auto c = parse_complex(t);
    auto again = parse_complex(to_text(c));
    CHECK(again == c);
    CHECK(to_text(again) == to_text(c));
  }
  for (auto c : {make_cgn(P("gens: x; rels: x^4"), 3, kBound), s3_with_z2(), from_presentation(P("gens: a, b; rels: a*b*a^-1*b^-1"))})
    CHECK(parse_complex(to_text(c)) == c);
  CHECK_THROWS_AS(parse_complex("objects: o\ndeg2: r@o: y\n"), Error);
  CHECK_THROWS_AS(parse_complex("objects: o\ndeg3: s@o: r\n"), Error);
}

TEST_CASE("groupoid word problem") {
  GroupoidPresentation p;
  p.graph.add_object("p");
  p.graph.add_object("q");
  p.graph.add_edge("a", 0, 0);
  p.graph.add_edge("e", 0, 1);
  p.graph.add_edge("b", 1, 1);
  p.relations.push_back({path("a*a*a", p.graph), path("id_p", p.graph)});
  p.relations.push_back({path("b*b", p.graph), path("id_q", p.graph)});
  GroupoidWordSolver s(p, kBound);
  const auto& g = p.graph;
  CHECK(s.is_identity(path("a^3", g)));
  CHECK(s.is_identity(path("e*b^2*e^-1", g)));
  CHECK_FALSE(s.is_identity(path("e*b*e^-1", g)));
  CHECK(s.equal(path("a^-1", g), path("a^2", g)));
  CHECK(s.equal(path("a^2*a*e*b*e^-1", g), path("e*b^3*e^-1", g)));
  CHECK_FALSE(s.equal(path("a*e*b*e^-1", g), path("e*b*e^-1*a", g)));
}

TEST_CASE("nabla of a crossed complex") {
  auto c = from_presentation(P("gens: x; rels: x^2"));
  auto nb = nabla(c, 0, kBound);
  REQUIRE(nb.ranks.size() == 3);
  CHECK(nb.ranks[0] == 1);
  CHECK(nb.ranks[1] == 1);
  CHECK(nb.ranks[2] == 1);
  CHECK(nb.failing_squares().empty());
  // d1(x) = x - 1 and d2(r) = 1 + x
  CHECK(nb.boundaries[1][0][0] == ZG::unit(1) - ZG::unit(0));
  CHECK(nb.boundaries[2][0][0] == ZG::unit(0) + ZG::unit(1));
  auto nfox = nabla(P("gens: x; rels: x^2"), kBound);
  CHECK(nfox.boundaries[2] == nb.boundaries[2]);
}

TEST_CASE("morphisms") {
  auto c3 = make_cgn(P("gens: c; rels: c^3"), 1, kBound);
  auto s3 = make_cgn(P("gens: a, b; rels: a^3, b^2, (a*b)^2"), 1, kBound);
  ComplexMorphism f{{0}, {path("a", s3.graph())}, {}};
  CHECK(check_morphism(c3, s3, f, kBound).ok);
  ComplexMorphism bad{{0}, {path("b", s3.graph())}, {}};
  CHECK_FALSE(check_morphism(c3, s3, bad, kBound).ok);

  auto pres = from_presentation(P("gens: x; rels: x^2"));
  auto cgn = make_cgn(P("gens: x; rels: x^2"), 1, kBound);
  ComplexMorphism quotient{{0}, {path("x", cgn.graph())}, {{zero_chain(0)}}};
  CHECK(check_morphism(pres, cgn, quotient, kBound).ok);
  ComplexMorphism id{{0}, {path("x", pres.graph())}, {{generator_chain(pres, 2, 0)}}};
  CHECK(check_morphism(pres, pres, id, kBound).ok);
  ComplexMorphism twice{{0}, {path("x", pres.graph())}, {{scale(generator_chain(pres, 2, 0), 2)}}};
  CHECK_FALSE(check_morphism(pres, pres, twice, kBound).ok);
}
