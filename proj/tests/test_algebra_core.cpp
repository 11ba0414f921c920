#include <doctest.h>

#include <functional>
#include <numeric>
#include <random>

#include "xkit/enumerate.hpp"
#include "xkit/error.hpp"
#include "xkit/finite_group.hpp"
#include "xkit/group_ring.hpp"
#include "xkit/int_matrix.hpp"
#include "xkit/module_kernel.hpp"
#include "xkit/presentation.hpp"

using namespace xkit;

namespace {

// Naive oracle: rescan and delete the first cancelling pair until none remain.
std::vector<Letter> naive_reduce(std::vector<Letter> w) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i].gen == w[i + 1].gen && w[i].sign == -w[i + 1].sign) {
        w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
  }
  return w;
}

std::vector<std::vector<Letter>> all_words(int max_len) {
  const Letter alphabet[] = {{0, 1}, {0, -1}, {1, 1}, {1, -1}};
  std::vector<std::vector<Letter>> out{{}};
  std::size_t start = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = start; i < end; ++i)
      for (const Letter& l : alphabet) {
        auto w = out[i];
        w.push_back(l);
        out.push_back(w);
      }
    start = end;
  }
  return out;
}

std::int64_t gcd_of(const std::vector<std::int64_t>& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

// Determinantal divisor d_k: gcd of all k-by-k minors.
std::int64_t determinantal_divisor(const IntMatrix& m, std::size_t k) {
  std::vector<std::int64_t> minors;
  std::vector<std::size_t> rows(k), cols(k);
  std::function<void(std::size_t, std::size_t)> pick_cols;
  std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t idx, std::size_t from) {
    if (idx == k) {
      pick_cols(0, 0);
      return;
    }
    for (std::size_t r = from; r < m.rows(); ++r) {
      rows[idx] = r;
      pick_rows(idx + 1, r + 1);
    }
  };
  pick_cols = [&](std::size_t idx, std::size_t from) {
    if (idx == k) {
      IntMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(rows[i], cols[j]);
      minors.push_back(determinant(sub));
      return;
    }
    for (std::size_t c = from; c < m.cols(); ++c) {
      cols[idx] = c;
      pick_cols(idx + 1, c + 1);
    }
  };
  pick_rows(0, 0);
  return gcd_of(minors);
}

// Rank over the rationals by floating elimination; entries here are tiny.
std::size_t float_rank(const IntMatrix& m) {
  std::vector<std::vector<long double>> a(m.rows(), std::vector<long double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = static_cast<long double>(m.at(i, j));
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    for (std::size_t i = rank; i < m.rows(); ++i)
      if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
    if (std::abs(a[p][c]) < 1e-9) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != rank) {
        long double f = a[i][c] / a[rank][c];
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] -= f * a[rank][j];
      }
    ++rank;
  }
  return rank;
}

bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (!solve_left(b, a.row(i))) return false;
  for (std::size_t i = 0; i < b.rows(); ++i)
    if (!solve_left(a, b.row(i))) return false;
  return true;
}

}  // namespace

TEST_CASE("free_reduce examples") {
  auto x = Letter{0, 1}, X = Letter{0, -1}, y = Letter{1, 1}, Y = Letter{1, -1}, z = Letter{2, 1};
  CHECK(free_reduce({x, X}).empty());
  CHECK(free_reduce({x, y, Y, x}) == std::vector<Letter>{x, x});
  CHECK(free_reduce({x, Y, y, X, z}) == std::vector<Letter>{z});
}

TEST_CASE("free_reduce agrees with naive rescanning and is idempotent up to length 8") {
  for (const auto& w : all_words(8)) {
    auto r = free_reduce(w);
    REQUIRE(r == naive_reduce(w));
    REQUIRE(free_reduce(r) == r);
    REQUIRE(r.size() <= w.size());
  }
}

TEST_CASE("free_reduce is compatible with concatenation") {
  auto words = all_words(4);
  for (const auto& u : words)
    for (const auto& v : words) {
      auto uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      auto ru = free_reduce(u), rv = free_reduce(v);
      ru.insert(ru.end(), rv.begin(), rv.end());
      REQUIRE(free_reduce(uv) == free_reduce(ru));
    }
}

TEST_CASE("presentation text round trip") {
  auto p = parse_presentation("gens: x,y; rels: x^2, (x*y)^3, x*y = y*x");
  CHECK(p.generators == std::vector<std::string>{"x", "y"});
  REQUIRE(p.relators.size() == 3);
  CHECK(p.relators[1].length() == 6);
  CHECK(parse_presentation(to_text(p)) == p);
  CHECK_THROWS_AS(parse_presentation("gens: x; rels: y"), Error);
  CHECK_THROWS_AS(parse_presentation("gens: x; rels: x^"), Error);
}

TEST_CASE("finite group constructors satisfy the axioms") {
  for (const auto& g : {FiniteGroup::cyclic(6), FiniteGroup::dihedral(4), FiniteGroup::symmetric(3),
                        FiniteGroup::symmetric(4), FiniteGroup::alternating(4), FiniteGroup::quaternion(),
                        FiniteGroup::klein_four()})
    CHECK(satisfies_group_axioms(g));
  CHECK(FiniteGroup::symmetric(4).order() == 24);
  CHECK(FiniteGroup::alternating(4).order() == 12);
  CHECK(FiniteGroup::dihedral(3).order() == 6);
  CHECK(find_isomorphism(FiniteGroup::dihedral(3), FiniteGroup::symmetric(3)));
  CHECK_FALSE(find_isomorphism(FiniteGroup::dihedral(4), FiniteGroup::quaternion()));
  CHECK_FALSE(find_isomorphism(FiniteGroup::cyclic(4), FiniteGroup::klein_four()));
}

TEST_CASE("automorphism groups") {
  std::vector<std::vector<int>> auts;
  auto a = automorphism_group(FiniteGroup::symmetric(3), &auts);
  CHECK(a.order() == 6);
  CHECK(find_isomorphism(a, FiniteGroup::symmetric(3)));
  CHECK(automorphism_group(FiniteGroup::quaternion(), nullptr).order() == 24);
  CHECK(automorphism_group(FiniteGroup::klein_four(), nullptr).order() == 6);
  CHECK(automorphism_group(FiniteGroup::cyclic(5), nullptr).order() == 4);
}

TEST_CASE("enumerate_fp_group examples") {
  auto c3 = enumerate_fp_group(parse_presentation("gens: x; rels: x^3"), 10);
  CHECK(c3.order() == 3);
  auto triv = enumerate_fp_group(parse_presentation("gens: x; rels: x"), 2);
  CHECK(triv.order() == 1);
  auto v4 = enumerate_fp_group(parse_presentation("gens: x,y; rels: x^2, y^2, (x*y)^2"), 16);
  CHECK(v4.order() == 4);
  CHECK(find_isomorphism(v4.group(), FiniteGroup::klein_four()));
}

TEST_CASE("enumerate_fp_group output is a group in which every relator dies") {
  struct Case {
    const char* text;
    FiniteGroup expected;
  };
  std::vector<Case> cases = {
      {"gens: s,t; rels: s^3, t^2, (s*t)^2", FiniteGroup::symmetric(3)},
      {"gens: r,f; rels: r^4, f^2, f*r*f^-1*r", FiniteGroup::dihedral(4)},
      {"gens: i,j; rels: i^4, i^2*j^-2, j^-1*i*j*i", FiniteGroup::quaternion()},
      {"gens: a,b; rels: a^2, b^3, (a*b)^3", FiniteGroup::alternating(4)},
      {"gens: a,b; rels: a^2, b^3, (a*b)^4", FiniteGroup::symmetric(4)},
      {"gens: x,y; rels: x^6, y, x^2*y", FiniteGroup::cyclic(2)},
  };
  for (const auto& c : cases) {
    auto p = parse_presentation(c.text);
    auto g = enumerate_fp_group(p, 200);
    INFO(c.text);
    CHECK(satisfies_group_axioms(g.group()));
    for (const auto& r : p.relators) CHECK(g.evaluate(r) == 0);
    for (int e = 0; e < g.order(); ++e) CHECK(g.evaluate(g.normal_form(e)) == e);
    CHECK(find_isomorphism(g.group(), c.expected));
  }
  auto a5 = enumerate_fp_group(parse_presentation("gens: a,b; rels: a^2, b^3, (a*b)^5"), 200);
  CHECK(a5.order() == 60);
}

TEST_CASE("enumerate_fp_group signals unbounded closure") {
  CHECK_THROWS_AS(enumerate_fp_group(parse_presentation("gens: x; rels: 1"), 50), Error);
  try {
    enumerate_fp_group(parse_presentation("gens: x,y; rels: x^2, y^3"), 100);
    FAIL("expected unbounded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unbounded);
  }
  CHECK_THROWS_AS(enumerate_fp_group(parse_presentation("gens: x; rels: x^5"), 3), Error);
}

TEST_CASE("group ring arithmetic") {
  auto c2 = FiniteGroup::cyclic(2);
  ZG one = ZG::unit(0), x = ZG::unit(1);
  CHECK(multiply(one + x, one - x, c2).is_zero());
  CHECK(multiply(one + x, one, c2) == one + x);
  CHECK(((one + x) + (-one - x)).is_zero());
  // associativity and distributivity over Z[S3], exhaustive on basis triples
  auto s3 = FiniteGroup::symmetric(3);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c) {
        ZG u = ZG::unit(a) - ZG::unit(b, 2), v = ZG::unit(b) + ZG::unit(c), w = ZG::unit(c, 3);
        REQUIRE(multiply(multiply(u, v, s3), w, s3) == multiply(u, multiply(v, w, s3), s3));
        REQUIRE(multiply(u, v + w, s3) == multiply(u, v, s3) + multiply(u, w, s3));
      }
  CHECK(to_string(one + x.scaled(-2), {"1", "x"}) == "1 - 2*x");
}

TEST_CASE("smith normal form examples") {
  auto d = smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}}, 2));
  CHECK(d.D == IntMatrix::from_rows({{1, 0}, {0, 6}}, 2));
  CHECK(smith_normal_form(IntMatrix(3, 2)).D == IntMatrix(3, 2));
  CHECK(smith_normal_form(IntMatrix::identity(4)).D == IntMatrix::identity(4));
}

TEST_CASE("smith normal form properties on random matrices") {
  std::mt19937 rng(20261015);
  std::uniform_int_distribution<int> dim(1, 4), val(-6, 6);
  for (int trial = 0; trial < 300; ++trial) {
    IntMatrix m(dim(rng), dim(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = val(rng) * (trial % 3 == 0 ? 2 : 1);
    auto s = smith_normal_form(m);
    REQUIRE(s.U * m * s.V == s.D);
    auto du = determinant(s.U), dv = determinant(s.V);
    REQUIRE((du == 1 || du == -1));
    REQUIRE((dv == 1 || dv == -1));
    for (std::size_t i = 0; i < s.D.rows(); ++i)
      for (std::size_t j = 0; j < s.D.cols(); ++j)
        if (i != j) REQUIRE(s.D.at(i, j) == 0);
    auto diag = s.diagonal();
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) REQUIRE(diag[i + 1] % diag[i] == 0);
    // invariant factors from determinantal divisors
    std::int64_t prev = 1;
    for (std::size_t k = 1; k <= diag.size(); ++k) {
      std::int64_t dk = determinantal_divisor(m, k);
      REQUIRE(dk / prev == diag[k - 1]);
      prev = dk;
    }
    REQUIRE(s.rank == float_rank(m));
  }
}

TEST_CASE("kernels and solving") {
  IntMatrix m = IntMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}, 3);
  auto lk = left_kernel(m);
  CHECK(lk.rows() == 1);
  CHECK((lk * m).is_zero());
  auto rk = right_kernel(m);
  CHECK(rk.rows() == 1);
  CHECK((m * rk.transpose()).is_zero());
  auto x = solve_left(m, {3, 2, 5});
  REQUIRE(x);
  CHECK((IntMatrix::from_rows({*x}, 3) * m).row(0) == std::vector<std::int64_t>{3, 2, 5});
  CHECK_FALSE(solve_left(IntMatrix::from_rows({{2, 0}}, 2), {1, 0}));
  CHECK(cokernel_invariants(IntMatrix::from_rows({{6}}, 1), 1) == AbelianInvariants{{6}, 0});
  CHECK(to_string(cokernel_invariants(IntMatrix::from_rows({{2, 0, 0}}, 3), 3)) == "Z^2 x C2");
}

TEST_CASE("overflow is an error") {
  IntMatrix m = IntMatrix::from_rows({{INT64_MAX / 2 + 1, 0}, {0, 4}}, 2);
  CHECK_THROWS_AS(m * IntMatrix::from_rows({{2, 0}, {0, 1}}, 2), Error);
}

TEST_CASE("module_kernel examples") {
  auto c2 = FiniteGroup::cyclic(2);
  ZG one = ZG::unit(0), x = ZG::unit(1);
  auto k = module_kernel({{one + x}}, 1, c2);
  REQUIRE(k.generators.size() == 1);
  CHECK(k.rank == 1);
  // generated by 1 - x up to sign
  CHECK(same_lattice(translate_closure(k.generators, 1, c2), translate_closure({{one - x}}, 1, c2)));
  CHECK(module_kernel({{one}}, 1, c2).rank == 0);
  CHECK(module_kernel({{ZG()}}, 1, c2).rank == 2);
}

TEST_CASE("module_kernel rows annihilate and rank matches the integer kernel") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> val(-2, 2);
  for (const auto& g : {FiniteGroup::cyclic(3), FiniteGroup::symmetric(3), FiniteGroup::klein_four()}) {
    for (int trial = 0; trial < 10; ++trial) {
      ModuleMatrix m(3, std::vector<ZG>(2));
      for (auto& row : m)
        for (auto& e : row)
          for (int h = 0; h < g.order(); ++h) e.add_term(h, val(rng) * (trial % 2));
      auto k = module_kernel(m, 2, g);
      for (const auto& r : k.generators)
        for (const auto& e : apply_map(r, m, 2, g)) REQUIRE(e.is_zero());
      auto e = expand_map(m, 2, g);
      REQUIRE(k.rank == e.rows() - float_rank(e));
      // generators reproduce the full integer kernel
      REQUIRE(same_lattice(translate_closure(k.generators, 3, g), k.integer_basis));
    }
  }
}
