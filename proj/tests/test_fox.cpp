#include <doctest.h>

#include <chrono>

#include "xkit/error.hpp"
#include "xkit/fox.hpp"

using namespace xkit;

namespace {

std::vector<FreeWord> words_up_to(int max_len, int gens) {
  std::vector<FreeWord> out{FreeWord()};
  for (std::size_t start = 0, len = 1; static_cast<int>(len) <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = start; i < end; ++i)
      for (int x = 0; x < gens; ++x)
        for (int sign : {1, -1}) {
          auto l = out[i].letters();
          l.push_back({x, sign});
          FreeWord w(l);
          if (w.length() == len) out.push_back(w);
        }
    start = end;
  }
  return out;
}

// Derivative computed letter by letter from the derivation law.
ZF law_derivative(const std::vector<Letter>& w, int x) {
  if (w.empty()) return {};
  std::vector<Letter> rest(w.begin() + 1, w.end());
  ZF head;
  if (w[0].gen == x) head = w[0].sign > 0 ? ZF::unit(FreeWord()) : ZF::unit(FreeWord({w[0]}), -1);
  return multiply(head, ZF::unit(FreeWord(rest))) + law_derivative(rest, x);
}

const char* kPresentations[] = {
    "gens: x; rels: x",
    "gens: x; rels: x^2",
    "gens: x; rels: x^5",
    "gens: x, y; rels: x^2, y^2, (x*y)^2",
    "gens: x, y; rels: x^3, y^2, (x*y)^2",
    "gens: a, b; rels: a^4, b^2, a*b = b*a^-1",
    "gens: i, j; rels: i^4, i^2 = j^2, j^-1*i*j = i^-1",
    "gens: x, y; rels: x^3, y^3, (x*y)^2",
};

}  // namespace

TEST_CASE("fox derivative base cases") {
  auto p = parse_presentation("gens: x, y");
  FreeWord x = p.word("x"), y = p.word("y");
  CHECK(fox_derivative(x, 0) == ZF::unit(FreeWord()));
  CHECK(fox_derivative(y, 0).is_zero());
  CHECK(fox_derivative(x.inverse(), 0) == ZF::unit(x.inverse(), -1));
  for (int n = 1; n <= 5; ++n) {
    ZF expected;
    for (int k = 0; k < n; ++k) expected.add_term(x.pow(k), 1);
    CHECK(fox_derivative(x.pow(n), 0) == expected);
  }
}

TEST_CASE("closed form agrees with the derivation law on short words") {
  for (const auto& w : words_up_to(6, 2))
    for (int x = 0; x < 2; ++x) CHECK(fox_derivative(w, x) == law_derivative(w.letters(), x));
}

TEST_CASE("derivation law exhaustive over pairs of words of length at most five") {
  auto g = enumerate_fp_group(parse_presentation("gens: x, y; rels: x^3, y^2, (x*y)^2"), 100);
  auto words = words_up_to(5, 2);
  CHECK(words.size() == 485);
  std::size_t checked = 0;
  bool all = true;
  for (const auto& u : words)
    for (const auto& v : words)
      for (int x = 0; x < 2; ++x) {
        ZG lhs = fox_derivative(u * v, x, g);
        ZG rhs = right_translate(fox_derivative(u, x, g), g.evaluate(v), g.group()) + fox_derivative(v, x, g);
        all &= lhs == rhs;
        ++checked;
      }
  CHECK(all);
  CHECK(checked == 2 * 485 * 485);
}

TEST_CASE("free derivative pushes forward to the finite one") {
  auto p = parse_presentation("gens: x, y; rels: x^2, y^2, (x*y)^2");
  auto g = enumerate_fp_group(p, 100);
  for (const auto& w : words_up_to(5, 2))
    for (int x = 0; x < 2; ++x)
      CHECK(push_forward(fox_derivative(w, x), g.generator_images(), g.group()) == fox_derivative(w, x, g));
}

TEST_CASE("fox jacobians") {
  {
    auto j = fox_jacobian(parse_presentation("gens: x; rels: x^2"), 100);
    int x = j.group.generator_image(0);
    CHECK(j.matrix.size() == 1);
    CHECK(j.matrix[0][0] == ZG::unit(0) + ZG::unit(x));
  }
  {
    auto j = fox_jacobian(parse_presentation("gens: x; rels: x"), 100);
    CHECK(j.matrix[0][0] == ZG::unit(0));
  }
  {
    auto p = parse_presentation("gens: x, y; rels: x^2, y^2, (x*y)^2");
    auto j = fox_jacobian(p, 100);
    CHECK(j.group.order() == 4);
    CHECK(j.matrix.size() == 3);
    int x = j.group.generator_image(0), y = j.group.generator_image(1);
    const auto& G = j.group.group();
    CHECK(j.matrix[0][0] == ZG::unit(0) + ZG::unit(x));
    CHECK(j.matrix[0][1].is_zero());
    CHECK(j.matrix[1][1] == ZG::unit(0) + ZG::unit(y));
    // d(xyxy)/dx = yxy + y
    CHECK(j.matrix[2][0] == ZG::unit(G.mul(y, G.mul(x, y))) + ZG::unit(y));
    CHECK(j.matrix[2][1] == ZG::unit(G.mul(x, y)) + ZG::unit(0));
  }
}

TEST_CASE("d1 d2 vanishes for every catalogue presentation") {
  for (const char* text : kPresentations) {
    CAPTURE(text);
    auto j = fox_jacobian(parse_presentation(text), 200);
    auto composite = compose_maps(j.matrix, j.d1(), 1, j.group.group());
    for (const auto& row : composite) CHECK(row[0].is_zero());
    auto c = nabla(parse_presentation(text), 200);
    CHECK(c.failing_squares().empty());
  }
}

TEST_CASE("identities among relations of cyclic presentations") {
  for (int n = 2; n <= 5; ++n) {
    GroupPresentation p{{"x"}, {FreeWord::generator(0).pow(n)}};
    auto id = identities_module(p, 100);
    CHECK(id.invariants.free_rank == static_cast<std::size_t>(n - 1));
    CHECK(id.invariants.torsion.empty());
    CHECK(id.kernel.rank == static_cast<std::size_t>(n - 1));
    auto g = enumerate_fp_group(p, 100);
    int x = g.generator_image(0);
    // generated by 1 - x
    IntMatrix expected = translate_closure({{ZG::unit(0) - ZG::unit(x)}}, 1, g.group());
    IntMatrix found = translate_closure(id.kernel.generators, 1, g.group());
    for (std::size_t i = 0; i < expected.rows(); ++i) CHECK(solve_left(found, expected.row(i)).has_value());
    for (std::size_t i = 0; i < found.rows(); ++i) CHECK(solve_left(expected, found.row(i)).has_value());
  }
  auto trivial = identities_module(parse_presentation("gens: x; rels: x"), 100);
  CHECK(trivial.kernel.rank == 0);
  CHECK(trivial.kernel.generators.empty());
}

TEST_CASE("diagram of derived modules commutes and the bottom row is exact") {
  for (const char* text : {"gens: x; rels: x^2", "gens: x; rels: x^3"}) {
    auto r = derived_diagram_check(parse_presentation(text), 2, 1, 100);
    CHECK(r.ok());
    CHECK(r.elements_checked == 1 + 6 + 36);
    CHECK(r.words_checked == 1 + 2 + 2 + 2);
  }
  auto r = derived_diagram_check(parse_presentation("gens: x, y; rels: x^3, y^2, (x*y)^2"), 2, 2, 100);
  CHECK(r.ok());
  FreeCrossedModule fcm(parse_presentation("gens: x; rels: x^2"), 100);
  CHECK(fcm.h2(FcmElement{})[0].is_zero());
  CHECK(h1(FreeWord(), fcm.quotient(), 1)[0].is_zero());
}

TEST_CASE("nabla of presentations") {
  auto c = nabla(parse_presentation("gens: x; rels: x^2"), 100);
  CHECK(c.ranks == std::vector<std::size_t>{1, 1, 1});
  int x = 1;
  CHECK(c.boundaries[1][0][0] == ZG::unit(x) - ZG::unit(0));
  CHECK(c.boundaries[2][0][0] == ZG::unit(0) + ZG::unit(x));
  auto trivial = nabla(parse_presentation("gens: x; rels: x"), 100);
  CHECK(trivial.failing_squares().empty());
  auto empty = nabla(parse_presentation("gens: "), 100);
  CHECK(empty.ranks == std::vector<std::size_t>{1, 0});
  CHECK_THROWS_AS(nabla(parse_presentation("gens: x, y; rels: x^2"), 100), Error);
}
