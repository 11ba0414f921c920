#include <doctest.h>

#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "xkit/crossed_module.hpp"
#include "xkit/error.hpp"
#include "xkit/free_crossed_module.hpp"

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

std::vector<std::vector<int>> all_homomorphisms(const FiniteGroup& src, const FiniteGroup& dst) {
  std::vector<std::vector<int>> out;
  std::vector<int> map(src.order(), 0);
  std::function<void(int)> rec = [&](int k) {
    if (k == src.order()) {
      if (is_homomorphism(src, dst, map)) out.push_back(map);
      return;
    }
    for (int y = 0; y < dst.order(); ++y) {
      map[k] = y;
      rec(k + 1);
    }
  };
  map[0] = 0;
  rec(1);
  return out;
}

}  // namespace

TEST_CASE("catalogue crossed modules satisfy the axioms and their consequences") {
  auto catalogue = crossed_module_catalogue();
  CHECK(catalogue.size() >= 10);
  for (const auto& x : catalogue) {
    CAPTURE(x.name);
    CHECK(x.M.order() <= 24);
    CHECK(x.P.order() <= 24);
    CHECK(satisfies_group_axioms(x.M));
    CHECK(satisfies_group_axioms(x.P));
    auto r = validate(x);
    CHECK(r.ok());
    CHECK(r.counterexamples.empty());
    auto c = consequences(x);
    CHECK(c.im_normal);
    CHECK(c.ker_central);
    CHECK(c.ker_fixed_by_im);
  }
}

TEST_CASE("inner automorphisms of S3 land in a copy of S3") {
  auto x = make_inner_automorphism(FiniteGroup::symmetric(3));
  CHECK(x.P.order() == 6);
  CHECK(find_isomorphism(x.P, FiniteGroup::symmetric(3)).has_value());
  // centreless, so mu is injective
  std::vector<int> image = x.mu;
  std::sort(image.begin(), image.end());
  CHECK(std::unique(image.begin(), image.end()) == image.end());
  CHECK(validate(x).ok());
  auto q8 = make_inner_automorphism(FiniteGroup::quaternion());
  CHECK(find_isomorphism(q8.P, FiniteGroup::symmetric(4)).has_value());
}

TEST_CASE("zero module and central epi") {
  auto zero = make_zero_module(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2), {0, 0, 1, 1, 2, 2});
  CHECK(std::all_of(zero.mu.begin(), zero.mu.end(), [](int p) { return p == 0; }));
  CHECK(validate(zero).ok());
  auto epi = make_central_epi(FiniteGroup::cyclic(4), FiniteGroup::cyclic(2), {0, 1, 0, 1});
  CHECK(validate(epi).ok());
  for (int k : {0, 2})
    for (int m = 0; m < 4; ++m) CHECK(epi.M.mul(k, m) == epi.M.mul(m, k));
}

TEST_CASE("constructors reject broken hypotheses") {
  auto s3 = FiniteGroup::symmetric(3);
  int transposition = 0;
  while (s3.element_order(transposition) != 2) ++transposition;
  CHECK(error_code([&] { make_normal_inclusion(s3, {0, transposition}); }) == Errc::precondition_failed);
  CHECK(error_code([&] { make_normal_inclusion(s3, {0, 1, 2}); }) == Errc::precondition_failed);
  std::vector<int> sign(6);
  for (int g = 0; g < 6; ++g) sign[g] = s3.element_order(g) == 2;
  CHECK(error_code([&] { make_central_epi(s3, FiniteGroup::cyclic(2), sign); }) == Errc::precondition_failed);
  CHECK(error_code([&] { make_central_epi(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), {0, 2}); }) ==
        Errc::precondition_failed);
  CHECK(error_code([&] { make_zero_module(s3, FiniteGroup::cyclic(1), {0, 1, 2, 3, 4, 5}); }) ==
        Errc::precondition_failed);
  CHECK(error_code([&] { make_zero_module(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2), {0, 1, 1, 2, 2, 0}); }) ==
        Errc::precondition_failed);
  StandardData data{FiniteGroup::cyclic(4), FiniteGroup::cyclic(2), {}, {0, 1, 0, 1}, {}};
  CHECK(validate(make_standard(StandardKind::central_epi, data)).ok());
}

TEST_CASE("a translation action on C2 breaks CM1") {
  CrossedModule x;
  x.M = FiniteGroup::cyclic(2);
  x.P = FiniteGroup::cyclic(2);
  x.mu = {0, 1};
  x.action = {0, 1, 1, 0};  // m^p = m + p
  auto r = validate(x);
  CHECK_FALSE(r.cm1_ok);
  CHECK_FALSE(r.action_ok);
  CHECK_FALSE(r.counterexamples.empty());
  bool mentions_cm1 = false;
  for (const auto& s : r.counterexamples) mentions_cm1 |= s.rfind("CM1", 0) == 0;
  CHECK(mentions_cm1);
}

TEST_CASE("every valid structure over small carriers obeys the consequences") {
  const std::vector<FiniteGroup> groups{FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4),
                                        FiniteGroup::klein_four(), FiniteGroup::symmetric(3)};
  int valid = 0, invalid = 0;
  for (const auto& M : groups)
    for (const auto& P : groups) {
      std::vector<std::vector<int>> auts;
      auto aut = automorphism_group(M, &auts);
      auto mus = all_homomorphisms(M, P);
      auto actions = all_homomorphisms(P, aut);
      for (const auto& mu : mus)
        for (const auto& phi : actions) {
          CrossedModule x{"", M, P, mu, {}};
          x.action.resize(static_cast<std::size_t>(M.order()) * P.order());
          for (int m = 0; m < M.order(); ++m)
            for (int p = 0; p < P.order(); ++p) x.action[static_cast<std::size_t>(m) * P.order() + p] = auts[phi[p]][m];
          auto r = validate(x);
          CHECK(r.mu_hom_ok);
          CHECK(r.action_ok);
          if (!r.ok()) {
            ++invalid;
            continue;
          }
          ++valid;
          auto c = consequences(x);
          CHECK(c.im_normal);
          CHECK(c.ker_central);
          CHECK(c.ker_fixed_by_im);
        }
    }
  CHECK(valid > 20);
  CHECK(invalid > 20);
}

TEST_CASE("crossed module text format") {
  const char* text = R"(name: A3 in S3
M: c | c^3
P: a, b | a^3, b^2, (a*b)^2
mu: c = a
act: a(c) = c, b(c) = c^-1
)";
  auto spec = parse_crossed_module(text);
  CHECK(spec.M.generators.size() == 1);
  CHECK(parse_crossed_module(to_text(spec)) == spec);
  auto x = realize(spec, 100);
  CHECK(x.M.order() == 3);
  CHECK(x.P.order() == 6);
  CHECK(validate(x).ok());
  auto bad = parse_crossed_module("M: c | c^3\nP: b | b^2\nact: b(c) = c^2\nmu: c = b");
  CHECK(error_code([&] { realize(bad, 100); }) == Errc::precondition_failed);
  auto infinite = parse_crossed_module("M: c |\nP: b | b^2");
  CHECK(error_code([&] { realize(infinite, 50); }) == Errc::infinite_carrier);
  CHECK(error_code([&] { parse_crossed_module("M: c | c^3\nP: b | b^2\nact: b(z) = c"); }) == Errc::parse);
}

TEST_CASE("free crossed module boundary") {
  auto p = parse_presentation("gens: x, y; rels: x^2, x*y*x^-1*y^-1");
  const auto& omega = p.relators;
  FreeWord x = p.word("x"), y = p.word("y");
  CHECK(fcm_boundary(FcmElement{{{0, 1, FreeWord()}}}, omega) == omega[0]);
  CHECK(fcm_boundary(FcmElement{{{1, 1, y}}}, omega) == y.inverse() * omega[1] * y);
  CHECK(fcm_boundary(FcmElement{{{0, 1, FreeWord()}, {0, -1, FreeWord()}}}, omega).is_identity());
  FcmElement e{{{0, 1, x}, {1, -1, y * x}}};
  FcmElement f{{{1, 1, FreeWord()}}};
  CHECK(fcm_boundary(e * f, omega) == fcm_boundary(e, omega) * fcm_boundary(f, omega));
  CHECK(fcm_boundary(inverse(e), omega) == fcm_boundary(e, omega).inverse());
}

TEST_CASE("action on the free crossed module") {
  auto p = parse_presentation("gens: x, y; rels: x^3, y^2, (x*y)^2");
  std::mt19937 rng(7);
  auto random_word = [&](int len) {
    std::vector<Letter> l;
    for (int i = 0; i < len; ++i) l.push_back({static_cast<int>(rng() % 2), rng() % 2 ? 1 : -1});
    return FreeWord(l);
  };
  CHECK(action_on_fcm(FcmElement{{{0, 1, p.word("x")}}}, p.word("y")) == FcmElement{{{0, 1, p.word("x*y")}}});
  for (int trial = 0; trial < 200; ++trial) {
    FcmElement e;
    for (int k = 0; k < 3; ++k) e.triples.push_back({static_cast<int>(rng() % 3), rng() % 2 ? 1 : -1, random_word(3)});
    FreeWord q = random_word(4);
    CHECK(fcm_boundary(action_on_fcm(e, q), p.relators) == fcm_boundary(e, p.relators).conjugate(q));
    CHECK(action_on_fcm(action_on_fcm(e, q), q.inverse()) == e);
    CHECK(action_on_fcm(e, FreeWord()) == e);
  }
}

TEST_CASE("Peiffer swaps are equal in the free crossed module") {
  for (const char* text : {"gens: x; rels: x^2", "gens: x, y; rels: x^3, y^2, (x*y)^2"}) {
    FreeCrossedModule fcm(parse_presentation(text), 100);
    const auto& p = fcm.presentation();
    std::vector<FreeWord> conj{FreeWord(), p.word("x"), p.word("x^-1"), p.word("x^2")};
    if (p.generators.size() > 1) conj.push_back(p.word("y*x"));
    for (int r = 0; r < fcm.relator_count(); ++r)
      for (int s = 0; s < fcm.relator_count(); ++s)
        for (const auto& a : conj)
          for (const auto& b : conj)
            for (int e1 : {1, -1})
              for (int e2 : {1, -1}) {
                FcmTriple first{s, e1, a}, second{r, e2, b};
                FcmElement lhs{{first, second}};
                auto rhs = peiffer_swap(first, second, p.relators);
                CHECK(fcm.equal(lhs, rhs));
                CHECK(fcm_equal(lhs, rhs, p, 100));
              }
  }
}

TEST_CASE("an identity among relations is detected") {
  auto p = parse_presentation("gens: x; rels: x^2");
  FreeCrossedModule fcm(p, 100);
  FcmElement witness{{{0, 1, FreeWord()}, {0, -1, p.word("x")}}};
  CHECK(fcm.boundary(witness).is_identity());
  auto h = fcm.h2(witness);
  int x = fcm.quotient().evaluate(p.word("x"));
  CHECK(h[0] == ZG::unit(0) - ZG::unit(x));
  CHECK_FALSE(h[0].is_zero());
  CHECK_FALSE(fcm.equal(witness, FcmElement{}));
  CHECK(fcm.equal(witness, witness));
  CHECK(fcm.parse("r1 - r1^x") == witness);
  CHECK(fcm.render(witness) == "r1 - r1^x");
  CHECK(fcm.parse(fcm.render(witness)) == witness);
  CHECK(fcm.parse("0").triples.empty());
}

TEST_CASE("equality in the free crossed module is a congruence") {
  for (const char* text : {"gens: x; rels: x^2", "gens: x; rels: x^3"}) {
    FreeCrossedModule fcm(parse_presentation(text), 100);
    const auto& p = fcm.presentation();
    std::vector<FreeWord> conj{FreeWord(), p.word("x"), p.word("x^-1"), p.word("x^2"), p.word("x^-2")};
    std::vector<FcmTriple> letters;
    for (int sign : {1, -1})
      for (const auto& q : conj) letters.push_back({0, sign, q});
    std::vector<FcmElement> elements{FcmElement{}};
    for (std::size_t start = 0, len = 1; len <= 3; ++len) {
      std::size_t end = elements.size();
      for (std::size_t i = start; i < end; ++i)
        for (const auto& t : letters) {
          FcmElement e = elements[i];
          e.triples.push_back(t);
          elements.push_back(e);
        }
      start = end;
    }
    CHECK(elements.size() == 1111);
    using Key = std::pair<FreeWord, std::vector<ZG>>;
    auto key = [&](const FcmElement& e) { return Key{fcm.boundary(e), fcm.h2(e)}; };
    std::map<Key, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < elements.size(); ++i) classes[key(elements[i])].push_back(i);
    CHECK(classes.size() < elements.size());
    std::vector<FcmElement> probes;
    for (const auto& t : letters) probes.push_back(FcmElement{{t}});
    for (const auto& [k, members] : classes) {
      const FcmElement& rep = elements[members.front()];
      for (std::size_t i : members) {
        const FcmElement& e = elements[i];
        CHECK(fcm.equal(e, rep));
        for (const auto& f : probes) {
          CHECK(fcm.equal(e * f, rep * f));
          CHECK(fcm.equal(f * e, f * rep));
        }
        for (const auto& q : conj) CHECK(fcm.equal(action_on_fcm(e, q), action_on_fcm(rep, q)));
      }
    }
  }
}
