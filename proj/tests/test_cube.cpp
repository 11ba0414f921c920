#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>

#include "xkit/cube.hpp"
#include "xkit/error.hpp"

using namespace xkit;

namespace {

CubeCell C(const char* s) { return cube_cell(s); }

std::vector<std::set<CubeCell>> face_subsets(const CubeCell& cell) {
  auto fs = faces(cell);
  std::vector<std::set<CubeCell>> out;
  for (unsigned mask = 1; mask < (1u << fs.size()); ++mask) {
    std::set<CubeCell> s;
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (mask >> i & 1u) s.insert(fs[i]);
    out.push_back(s);
  }
  return out;
}

// Every partial box of the cell, once per generating set.
std::vector<PartialBox> all_partial_boxes(const CubeCell& cell) {
  std::vector<PartialBox> out;
  for (const auto& s : face_subsets(cell)) {
    try {
      out.push_back(partial_box_on(cell, s));
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace

TEST_CASE("faces") {
  auto f = faces(C("**"));
  REQUIRE(f.size() == 4);
  CHECK(f[0] == C("0*"));
  CHECK(f[1] == C("1*"));
  CHECK(f[2] == C("*0"));
  CHECK(f[3] == C("*1"));
  CHECK(faces(C("010")).empty());
  CHECK(faces(C("*1*")).size() == 4);
  for (int n = 1; n <= 4; ++n) {
    auto cube = full_cube(n);
    CHECK(cube.size() == static_cast<std::size_t>(std::pow(3, n)));
    CHECK(cube.is_closed());
    for (const auto& c : cube.cells) CHECK(faces(c).size() == static_cast<std::size_t>(2 * c.dimension()));
  }
  CHECK(opposite(C("0*"), C("1*")));
  CHECK_FALSE(opposite(C("0*"), C("*1")));
  CHECK_THROWS_AS(cube_cell("0x1"), Error);
  CHECK_THROWS_AS(full_cube(7), Error);
  CHECK(full_cube(7, 7).size() == 2187);
}

TEST_CASE("elementary collapses") {
  auto sq = full_cube(2);
  auto c = elementary_collapse(sq, C("**"), C("*1"));
  CHECK(c.size() == sq.size() - 2);
  CHECK(c.is_closed());
  CHECK(c.size() == 7);

  auto two = closure(3, {C("**0"), C("*1*")});
  try {
    elementary_collapse(two, C("**0"), C("*10"));
    FAIL("expected not_free");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_free);
  }
  try {
    elementary_collapse(sq, C("**"), C("01"));
    FAIL("expected not_face");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_face);
  }
  auto edge = full_cube(1);
  auto v = elementary_collapse(edge, C("*"), C("1"));
  CHECK(v.size() == 1);
  CHECK(v.contains(C("0")));
}

TEST_CASE("collapse to a vertex") {
  auto start = std::chrono::steady_clock::now();
  for (int n = 1; n <= 4; ++n) {
    std::size_t expected = (static_cast<std::size_t>(std::pow(3, n)) - 1) / 2;
    auto cube = full_cube(n);
    for (const auto& v : cube.cells) {
      if (v.dimension() != 0) continue;
      auto steps = collapse_to_vertex(n, v);
      CHECK(steps.size() == expected);
      auto end = replay(cube, steps);
      REQUIRE(end.size() == 1);
      CHECK(*end.cells.begin() == v);
    }
  }
  auto steps = collapse_to_vertex(3, C("000"));
  CHECK(steps.size() == 13);
  CHECK(steps.front() == CollapseStep{C("***"), C("1**")});
  CHECK(parse_certificate(to_text(steps)) == steps);
  CHECK_THROWS_AS(collapse_to_vertex(2, C("0*")), Error);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(10));
}

TEST_CASE("product collapse") {
  struct Fixture {
    CubeComplex b, c;
    std::size_t steps;
  };
  std::vector<Fixture> fixtures = {
      {full_cube(1), closure(1, {C("0")}), 2},
      {full_cube(2), closure(2, {C("0*"), C("1*"), C("*0"), C("*1")}), 1},
      {full_cube(2), full_cube(2), 0},
      {full_cube(2), closure(2, {C("00")}), 8},
      {closure(3, {C("**0"), C("0**")}), closure(3, {C("0*0")}), 0},
  };
  fixtures[4].steps = fixtures[4].b.size() - fixtures[4].c.size();
  for (const auto& f : fixtures) {
    auto steps = product_collapse(f.b, f.c);
    CHECK(steps.size() == f.steps);
    CHECK(replay(cylinder_complex(f.b), steps) == product_collapse_target(f.b, f.c));
  }
  // every subcomplex pair of the square
  auto sq = full_cube(2);
  std::vector<CubeCell> cells(sq.cells.begin(), sq.cells.end());
  std::size_t pairs = 0;
  for (unsigned mask = 0; mask < (1u << cells.size()); ++mask) {
    CubeComplex c{2, {}};
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (mask >> i & 1u) c.cells.insert(cells[i]);
    if (!c.is_closed()) continue;
    ++pairs;
    CHECK(replay(cylinder_complex(sq), product_collapse(sq, c)) == product_collapse_target(sq, c));
  }
  CHECK(pairs > 20);
  try {
    product_collapse(closure(2, {C("0*")}), closure(2, {C("1*")}));
    FAIL("expected not_subcomplex");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_subcomplex);
  }
}

TEST_CASE("partial boxes") {
  CHECK_NOTHROW(make_partial_box(C("**"), C("0*"), {C("*0")}));
  try {
    make_partial_box(C("**"), C("0*"), {C("1*")});
    FAIL("expected not_partial_box");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_partial_box);
  }
  CHECK_THROWS_AS(make_partial_box(C("**"), C("00"), {}), Error);
  // a box is a partial box exactly for the base opposite the missing face
  for (const char* cell : {"*", "**", "***", "*0*"}) {
    auto c = C(cell);
    auto fs = faces(c);
    for (const auto& missing : fs) {
      std::set<CubeCell> rest;
      for (const auto& f : fs)
        if (f != missing) rest.insert(f);
      for (const auto& base : rest) {
        std::vector<CubeCell> sides;
        for (const auto& f : rest)
          if (f != base) sides.push_back(f);
        if (c.dimension() == 1) continue;
        if (opposite(base, missing)) {
          auto box = make_partial_box(c, base, sides);
          CHECK(box.is_box());
          CHECK(is_partial_box(c, box.complex()));
          CHECK(partial_box_on(c, rest).base == base);
        } else {
          CHECK_THROWS_AS(make_partial_box(c, base, sides), Error);
        }
      }
    }
  }
}

TEST_CASE("collapsing a cell onto a partial box") {
  for (const char* cell : {"*", "**", "***", "1**"})
    for (const auto& p : all_partial_boxes(C(cell))) {
      auto whole = closure(p.cell.ambient(), {p.cell});
      CHECK(replay(whole, collapse_onto(p)) == p.complex());
    }
}

TEST_CASE("box chains") {
  auto start = std::chrono::steady_clock::now();
  std::size_t pairs = 0;
  for (const char* cell : {"**", "***", "*1**"}) {
    auto boxes = all_partial_boxes(C(cell));
    for (const auto& outer : boxes)
      for (const auto& inner : boxes) {
        auto og = outer.generators();
        auto ig = inner.generators();
        if (!std::includes(og.begin(), og.end(), ig.begin(), ig.end())) {
          try {
            box_chain(outer, inner);
            FAIL("expected not_contained");
          } catch (const Error& e) {
            CHECK(e.code() == Errc::not_contained);
          }
          continue;
        }
        ++pairs;
        auto chain = box_chain(outer, inner);
        auto check = verify_box_chain(chain);
        for (const auto& p : check.problems) MESSAGE(p);
        CHECK(check.ok);
        CHECK(chain.added.size() == og.size() - ig.size());
      }
  }
  CHECK(pairs > 100);
  auto b = make_partial_box(C("**"), C("0*"), {C("*0")});
  auto base = make_partial_box(C("**"), C("0*"), {});
  auto chain = box_chain(b, base);
  CHECK(chain.added.size() == 1);
  CHECK(box_chain(b, b).added.empty());
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(10));
}

TEST_CASE("subdivisions") {
  auto s = subdivide({2});
  REQUIRE(s.parts.size() == 2);
  CHECK(s.parts[0].domain[0] == std::array<int, 2>{0, 1});
  CHECK(s.parts[1].domain[0] == std::array<int, 2>{1, 2});
  auto shared = shared_faces(s);
  REQUIRE(shared.size() == 1);
  CHECK(shared[0].position == 1);
  CHECK(compose_check(s, {{"a", "m"}, {"m", "b"}}) == 1);

  auto one = subdivide({1, 1});
  CHECK(one.parts.size() == 1);
  CHECK(shared_faces(one).empty());
  CHECK(compose_check(one, {{"a", "b", "c", "d"}}) == 0);

  auto grid = subdivide({2, 2});
  REQUIRE(grid.parts.size() == 4);
  CHECK(shared_faces(grid).size() == 4);
  FaceLabels good = {{"l0", "v0", "b0", "h0"}, {"l1", "v1", "h0", "t1"}, {"v0", "r0", "b1", "h1"}, {"v1", "r1", "h1", "t1'"}};
  CHECK(compose_check(grid, good) == 4);
  FaceLabels bad = good;
  bad[3][2] = "x";
  try {
    compose_check(grid, bad);
    FAIL("expected incidence_mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::incidence_mismatch);
    CHECK(std::string(e.what()).find("(2,1) and (2,2)") != std::string::npos);
  }
  CHECK_THROWS_AS(subdivide({2, 0}), Error);
  // parts tile the box
  auto big = subdivide({3, 1, 2});
  CHECK(big.parts.size() == 6);
  for (std::size_t k = 0; k < big.parts.size(); ++k) CHECK(big.part_index(big.parts[k].index) == static_cast<int>(k));
}

TEST_CASE("complex text round trip") {
  auto c = closure(3, {C("**0"), C("0**")});
  CHECK(parse_cube_complex(to_text(c)) == c);
  CHECK_THROWS_AS(parse_cube_complex("01\n011\n"), Error);
}
