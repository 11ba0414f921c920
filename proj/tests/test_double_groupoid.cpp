#include <doctest.h>

#include <random>

#include "xkit/double_groupoid.hpp"
#include "xkit/error.hpp"

using namespace xkit;

namespace {

template <class F>
Errc error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::parse;
}

CrossedModule named(const std::string& name) {
  for (auto& x : crossed_module_catalogue())
    if (x.name == name) return x;
  FAIL("missing catalogue entry " << name);
  return {};
}

// Counts well-formed shells by trying every edge and face labelling.
std::uint64_t brute_shell_count(const DoubleGroupoid& g) {
  const int np = g.P().order(), nm = g.M().order();
  std::uint64_t total = 0;
  std::array<std::array<std::array<int, 2>, 2>, 3> e{};
  for (int code = 0, top = 1 << 12; code < (np == 2 ? top : 0); ++code) {
    for (int k = 0; k < 12; ++k) e[k / 4][(k / 2) % 2][k % 2] = (code >> k) & 1;
    std::array<int, 6> m{};
    int states = 1;
    for (int f = 0; f < 6; ++f) states *= nm;
    for (int s = 0; s < states; ++s) {
      for (int f = 0, r = s; f < 6; ++f, r /= nm) m[f] = r % nm;
      total += is_well_formed(g, shell_from_edges(e, m));
    }
  }
  return total;
}

}  // namespace

TEST_CASE("carrier of quintuples") {
  DoubleGroupoid c2(named("C2 -> C2"));
  const auto squares = c2.squares();
  CHECK(squares.size() == 16);
  for (const auto& s : squares) CHECK(c2.is_square(s));

  // M trivial: every square has m = 1 and a commuting boundary
  DoubleGroupoid trivial(named("1 in C6"));
  for (const auto& s : trivial.squares()) {
    CHECK(s.m == 0);
    const auto& p = trivial.P();
    CHECK(p.mul(s.a, s.b) == p.mul(s.c, s.d));
  }
  CHECK(trivial.squares().size() == 216);

  DoubleGroupoid s3(named("A3 in S3"));
  const auto& p = s3.P();
  const auto& x = s3.crossed_module();
  int accepted = 0;
  for (int m = 0; m < 3; ++m)
    for (int c = 0; c < 6; ++c)
      for (int a = 0; a < 6; ++a)
        for (int d = 0; d < 6; ++d)
          for (int b = 0; b < 6; ++b) {
            const bool holds = p.mul(p.mul(a, b), x.mu[m]) == p.mul(c, d);
            CHECK(s3.is_square({m, c, a, d, b}) == holds);
            accepted += holds;
          }
  CHECK(accepted == 648);
  CHECK(s3.squares().size() == 648);
}

TEST_CASE("broken crossed modules are refused") {
  auto x = named("C3 sign C2-module");
  x.action[1 * 2 + 1] = 1;  // no longer an automorphism
  CHECK(error_code([&] { DoubleGroupoid g(x); }) == Errc::invalid_crossed_module);
}

TEST_CASE("compositions") {
  DoubleGroupoid g(named("C4 -> C2"));
  const Square s{1, 0, 0, 1, 0};
  REQUIRE(g.is_square(s));
  CHECK(g.compose_v(g.identity_v(s.c), s) == s);
  CHECK(g.compose_h(s, g.identity_h(s.d)) == s);
  CHECK(g.compose_v(s, s).m == 2);
  CHECK(error_code([&] { g.compose_v(s, g.identity_v(1)); }) == Errc::not_composable);
  CHECK(error_code([&] { g.compose_h(s, g.identity_h(0)); }) == Errc::not_composable);

  // The sign action twists the m-component of a composite.
  DoubleGroupoid sign(named("C3 sign C2-module"));
  const Square x{1, 0, 0, 1, 1}, y{1, 1, 1, 0, 0};
  REQUIRE(sign.is_square(x));
  REQUIRE(sign.is_square(y));
  CHECK(sign.compose_h(x, y).m == 2);
  const Square z{1, 1, 1, 1, 1};
  REQUIRE(sign.is_square(z));
  CHECK(sign.compose_h(z, z).m == sign.M().mul(2, 1));
  CHECK(sign.compose_v(z, z).m == sign.M().mul(1, 2));

  const std::vector<std::vector<Square>> grid = {{s, g.identity_h(s.d)}, {g.identity_v(s.b), g.connection(0, 1)}};
  CHECK(g.compose(grid) == s);
  CHECK(error_code([&] { g.compose({}); }) == Errc::precondition_failed);
}

TEST_CASE("connections, thin squares and fillers") {
  DoubleGroupoid g(named("C2 -> C2"));
  CHECK(g.connection(0, -1) == Square{});
  CHECK(g.connection(0, 1) == Square{});
  const Square lo = g.connection(1, -1), hi = g.connection(1, 1);
  CHECK((lo.c == 1 && lo.a == 1 && lo.d == 0 && lo.b == 0));
  CHECK((hi.c == 0 && hi.a == 0 && hi.d == 1 && hi.b == 1));
  CHECK(g.fold(lo) == 0);
  CHECK(g.is_thin(hi));
  CHECK(g.compose({{hi}, {lo}}) == g.identity_h(1));
  CHECK(g.compose({{hi, lo}}) == g.identity_v(1));

  CHECK(g.thin_filler(0, 0, 0) == Square{});
  const auto squares = g.squares();
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int d = 0; d < 2; ++d) {
        int thin = 0;
        for (const auto& s : squares) thin += s.m == 0 && s.a == a && s.c == c && s.d == d;
        CHECK(thin == 1);
        CHECK(g.is_square(g.thin_filler(a, c, d)));
      }
  const Square fat{1, 0, 0, 0, 1};
  REQUIRE(g.is_square(fat));
  CHECK_FALSE(g.is_thin(fat));
  CHECK(g.fold(fat) == 1);
}

TEST_CASE("law suite on C2 -> C2") {
  DoubleGroupoid g(named("C2 -> C2"));
  const auto report = run_law_suite(g);
  for (const auto& c : report.checks) {
    INFO(c.name << ": " << c.witness);
    CHECK(c.ok());
    CHECK(c.cases > 0);
  }
  CHECK(report.check("interchange").cases == 16 * 8 * 8 * 4);
  CHECK(report.check("unique thin filler").cases == 8);
  CHECK(report.check("vertical associativity").cases == 16 * 8 * 8);
  CHECK(report.check("hcl agrees with five-face formula").cases == 4096);
  // every pair of shells glued along a face, in each direction
  CHECK(report.check("commutative shells compose (direction 2)").cases == 4096 * 256);
  CHECK(error_code([&] { report.check("no such law"); }) == Errc::precondition_failed);
}

TEST_CASE("law suite where mu has a kernel") {
  for (const char* name : {"C3 sign C2-module", "C4 -> C2", "V4 swap C2-module"}) {
    DoubleGroupoid g(named(name));
    LawOptions options;
    options.shell_pair_limit = 200000;
    const auto report = run_law_suite(g, options);
    for (const auto& c : report.checks) {
      INFO(name << " / " << c.name << ": " << c.witness);
      CHECK(c.ok());
    }
  }
}

TEST_CASE("shell enumeration") {
  DoubleGroupoid c2(named("C2 -> C2"));
  DoubleGroupoid c4(named("C4 -> C2"));
  for (const auto* g : {&c2, &c4}) {
    std::uint64_t seen = 0;
    for_each_shell(*g, [&](const Shell3& sh) {
      ++seen;
      if (seen % 97 == 0) CHECK(is_well_formed(*g, sh));
    });
    CHECK(seen == brute_shell_count(*g));
  }
  CHECK(shell_census(c2, 1).shells == 4096);
  const auto census = shell_census(c4, 2);
  CHECK(census.shells == 262144);
  CHECK(census.commutative == 131072);
  CHECK(census.disagreements == 0);

  DoubleGroupoid sign(named("C3 sign C2-module"));
  const auto twisted = shell_census(sign);
  CHECK(twisted.shells == 93312);
  CHECK(twisted.commutative * 3 == twisted.shells);
  CHECK(twisted.disagreements == 0);
}

TEST_CASE("homotopy commutativity lemma") {
  DoubleGroupoid g(named("C3 trivial C2-module"));
  Shell3 flat;
  CHECK(hcl_commutative(g, flat));
  CHECK(five_face_commutative(g, flat));
  for (int k = 1; k <= 3; ++k)
    for (const auto& s : g.squares()) CHECK(hcl_commutative(g, degenerate_shell(g, s, k)));

  // one genuinely non-thin face, identities elsewhere
  for (std::size_t f = 0; f < 6; ++f) {
    Shell3 bent;
    bent.faces[f].m = 1;
    REQUIRE(is_well_formed(g, bent));
    CHECK_FALSE(hcl_commutative(g, bent));
    CHECK_FALSE(five_face_commutative(g, bent));
  }

  // two opposite faces with the same fold cancel out
  Shell3 balanced;
  balanced.face(2, -1).m = 1;
  balanced.face(2, 1).m = 1;
  CHECK(hcl_commutative(g, balanced));
  CHECK(five_face_composite(g, balanced) == balanced.face(2, 1));

  Shell3 broken;
  broken.face(1, -1) = {0, 1, 0, 1, 0};
  REQUIRE(g.is_square(broken.face(1, -1)));
  CHECK(error_code([&] { hcl_commutative(g, broken); }) == Errc::malformed_shell);
  CHECK(error_code([&] { odd_composite(g, broken); }) == Errc::malformed_shell);
  CHECK_FALSE(shell_defect(g, broken).empty());
  broken.face(1, -1).b = 1;
  CHECK(shell_defect(g, broken).find("not a square") != std::string::npos);
}

TEST_CASE("odd and even composites share their boundary") {
  DoubleGroupoid g(named("C4 -> C2"));
  for_each_shell(g, [&](const Shell3& sh) {
    const Square odd = odd_composite(g, sh), even = even_composite(g, sh);
    if (odd.c != even.c || odd.a != even.a || odd.d != even.d || odd.b != even.b) {
      FAIL("boundaries differ on\n" << to_text(g, sh));
    }
  });
}

TEST_CASE("composing shells") {
  DoubleGroupoid g(named("C4 -> C2"));
  std::vector<Shell3> shells;
  for_each_shell(g, [&](const Shell3& sh) {
    if (shells.size() < 4000) shells.push_back(sh);
  });
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const Shell3& sh = shells[rng() % shells.size()];
    for (int k = 1; k <= 3; ++k) {
      CHECK(compose_shells(g, sh, degenerate_shell(g, sh.face(k, 1), k), k) == sh);
      CHECK(compose_shells(g, degenerate_shell(g, sh.face(k, -1), k), sh, k) == sh);
    }
  }
  Shell3 flat, bent;
  bent.face(1, 1).m = 2;
  CHECK(error_code([&] { compose_shells(g, bent, flat, 1); }) == Errc::not_composable);
  CHECK(compose_shells(g, flat, bent, 1) == bent);
  CHECK(error_code([&] { compose_shells(g, flat, flat, 4); }) == Errc::precondition_failed);
}

TEST_CASE("shell text") {
  DoubleGroupoid g(named("A3 in S3"));
  std::vector<Shell3> shells;
  for_each_shell(g, [&](const Shell3& sh) {
    if (shells.size() < 50) shells.push_back(sh);
  });
  for (const auto& sh : shells) CHECK(parse_shell(g, to_text(g, sh)) == sh);
  const std::string text = "# all flat\n(0; 0, 0, 0, 0)\n(0; 0,0,0,0)\n(0;0,0,0,0)\n(0; 0, 0, 0, 0)\n"
                           "(0; 0, 0, 0, 0) # tail\n(0; 0, 0, 0, 0)\n";
  CHECK(parse_shell(g, text) == Shell3{});
  CHECK(error_code([&] { parse_shell(g, "(0; 0, 0, 0, 0)\n"); }) == Errc::parse);
  CHECK(error_code([&] { g.parse_square("(0; 0, 0, 0)"); }) == Errc::parse);
  CHECK(error_code([&] { g.parse_square("(0; 0, 0, 0, 9)"); }) == Errc::parse);
  CHECK(error_code([&] { g.parse_square("(1; 0, 0, 0, 0)"); }) == Errc::parse);
  CHECK(error_code([&] { g.parse_square("0; 0, 0, 0, 0"); }) == Errc::parse);
  std::string bad;
  for (int i = 0; i < 5; ++i) bad += "(0; 0, 0, 0, 0)\n";
  bad += "(0; 1, 1, 0, 0)\n";
  CHECK(error_code([&] { parse_shell(g, bad); }) == Errc::malformed_shell);
}
