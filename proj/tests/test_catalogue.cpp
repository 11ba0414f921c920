#include <doctest.h>

#include "xkit/catalogue.hpp"
#include "xkit/complex_eval.hpp"
#include "xkit/crossed_module.hpp"
#include "xkit/cube.hpp"
#include "xkit/double_groupoid.hpp"
#include "xkit/enumerate.hpp"
#include "xkit/error.hpp"

using namespace xkit;

namespace {

constexpr std::size_t kBound = 4096;

std::string load(const std::string& file) { return read_text_file(catalogue_path(file)); }

}  // namespace

TEST_CASE("catalogue is present") {
  for (const char* ext : {".gpd", ".pres", ".xmod", ".crs", ".shell", ".cube"})
    CHECK_FALSE(catalogue_files(ext).empty());
  CHECK_THROWS_AS(read_text_file(catalogue_path("missing.pres")), Error);
}

TEST_CASE("groupoid files round trip") {
  for (const auto& file : catalogue_files(".gpd")) {
    CAPTURE(file);
    const auto text = load(file);
    if (looks_like_pushout(text)) {
      const auto spec = parse_pushout(text);
      CHECK(parse_pushout(to_text(spec)).w == spec.w);
      const auto glued = glue(spec);
      validate(glued);
      CHECK(parse_groupoid(to_text(glued)) == glued);
      const auto name = glued.graph.objects.front();
      CHECK_FALSE(describe_group(vertex_group(glued, name, maximal_tree(glued.graph)), kBound).empty());
    } else {
      const auto g = parse_groupoid(text);
      validate(g);
      CHECK(parse_groupoid(to_text(g)) == g);
    }
  }
}

TEST_CASE("vertex groups of the glued groupoids") {
  auto describe = [](const std::string& file) {
    const auto g = glue(parse_pushout(load(file)));
    return describe_group(vertex_group(g, g.graph.objects.front(), maximal_tree(g.graph)), 64);
  };
  CHECK(describe("circle.gpd") == "free of rank 1");
  CHECK(describe("theta.gpd") == "free of rank 2");
  CHECK(describe("collar.gpd") == "finite of order 1");
  CHECK(describe("modular.gpd") == "no finite closure within bound 64");
}

TEST_CASE("presentation files round trip") {
  for (const auto& file : catalogue_files(".pres")) {
    CAPTURE(file);
    const auto p = parse_presentation(load(file));
    CHECK(parse_presentation(to_text(p)) == p);
  }
  CHECK(enumerate_fp_group(parse_presentation(load("s3.pres")), kBound).order() == 6);
  CHECK(enumerate_fp_group(parse_presentation(load("q8.pres")), kBound).order() == 8);
  CHECK(enumerate_fp_group(parse_presentation(load("a4.pres")), kBound).order() == 12);
}

TEST_CASE("crossed module files round trip and validate") {
  for (const auto& file : catalogue_files(".xmod")) {
    CAPTURE(file);
    const auto spec = parse_crossed_module(load(file));
    CHECK(parse_crossed_module(to_text(spec)) == spec);
    const auto x = realize(spec, kBound);
    CHECK(validate(x).ok() == (file != "broken.xmod"));
  }
}

TEST_CASE("crossed complex files round trip and validate") {
  for (const auto& file : catalogue_files(".crs")) {
    CAPTURE(file);
    const auto c = parse_complex(load(file));
    CHECK(parse_complex(to_text(c)) == c);
    const auto report = validate_complex(c, kBound);
    CHECK(report.ok());
  }
}

TEST_CASE("shell files parse against their crossed module") {
  for (const auto& file : catalogue_files(".shell")) {
    CAPTURE(file);
    const auto shell = split_shell_file(load(file));
    REQUIRE_FALSE(shell.xmod.empty());
    const DoubleGroupoid g(realize(parse_crossed_module(load(shell.xmod)), kBound));
    const auto sh = parse_shell(g, shell.faces);
    CHECK(is_well_formed(g, sh));
    CHECK(parse_shell(g, to_text(g, sh)).faces[0] == sh.faces[0]);
    CHECK(hcl_commutative(g, sh) == five_face_commutative(g, sh));
  }
  const auto bent = split_shell_file(load("bent.shell"));
  const DoubleGroupoid g(realize(parse_crossed_module(load(bent.xmod)), kBound));
  CHECK_FALSE(hcl_commutative(g, parse_shell(g, bent.faces)));
}

TEST_CASE("cube files round trip") {
  for (const auto& file : catalogue_files(".cube")) {
    CAPTURE(file);
    const auto listed = parse_cube_complex(load(file));
    CHECK(parse_cube_complex(to_text(listed)) == listed);
    const auto c = closure(listed.n, {listed.cells.begin(), listed.cells.end()});
    CHECK(c.is_closed());
  }
  const auto cube3 = parse_cube_complex(load("cube3.cube"));
  CHECK(closure(3, {cube3.cells.begin(), cube3.cells.end()}) == full_cube(3));
}
