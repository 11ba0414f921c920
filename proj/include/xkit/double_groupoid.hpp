#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "xkit/crossed_module.hpp"

namespace xkit {

// A square of the one-vertex double groupoid of a crossed module mu: M -> P.
//
//        c
//     +-----+
//   a |  m  | d        a * b * mu(m) = c * d
//     +-----+
//        b
//
// Direction 1 runs top to bottom (c = del1-, b = del1+), direction 2 left to
// right (a = del2-, d = del2+).
struct Square {
  int m = 0;
  int c = 0, a = 0, d = 0, b = 0;
  bool operator==(const Square&) const = default;
};

// edge(s, 1, -1) = c, edge(s, 1, +1) = b, edge(s, 2, -1) = a, edge(s, 2, +1) = d
int edge(const Square& s, int direction, int sign);

class DoubleGroupoid {
 public:
  // Throws invalid_crossed_module unless x passes validate().
  explicit DoubleGroupoid(CrossedModule x);

  const CrossedModule& crossed_module() const { return x_; }
  const FiniteGroup& M() const { return x_.M; }
  const FiniteGroup& P() const { return x_.P; }

  bool is_square(const Square& s) const;
  // Every quintuple satisfying the invariant, ordered by (m, a, c, d).
  std::vector<Square> squares() const;

  // Vertical: s above t, needs s.b == t.c; m'' = t.m * s.m^(t.d).
  Square compose_v(const Square& s, const Square& t) const;
  // Horizontal: s left of t, needs s.d == t.a; m'' = s.m^(t.b) * t.m.
  Square compose_h(const Square& s, const Square& t) const;
  // Identity for compose_v on the edge c: (1; c, 1, 1, c).
  Square identity_v(int c) const { return {0, c, 0, 0, c}; }
  // Identity for compose_h on the edge a: (1; 1, a, a, 1).
  Square identity_h(int a) const { return {0, 0, a, a, 0}; }
  Square inverse_v(const Square& s) const;
  Square inverse_h(const Square& s) const;

  // sign -1: top = left = a; sign +1: right = bottom = a.
  Square connection(int a, int sign) const;

  bool is_thin(const Square& s) const { return s.m == 0; }
  int fold(const Square& s) const { return s.m; }
  // The square with m = 1 on the box (a, c, d); b = a^-1 c d.
  Square thin_filler(int a, int c, int d) const;

  // Rows composed horizontally, then the rows vertically.
  Square compose(const std::vector<std::vector<Square>>& rows) const;

  std::string to_string(const Square& s) const;
  // "(m; c, a, d, b)" with element labels; throws parse on unknown labels.
  Square parse_square(std::string_view text) const;

 private:
  void require(const Square& s) const;

  CrossedModule x_;
};

// Faces in the order alpha1-, alpha1+, alpha2-, alpha2+, alpha3-, alpha3+.
struct Shell3 {
  std::array<Square, 6> faces;

  Square& face(int i, int sign) { return faces[static_cast<std::size_t>(2 * (i - 1) + (sign > 0))]; }
  const Square& face(int i, int sign) const {
    return faces[static_cast<std::size_t>(2 * (i - 1) + (sign > 0))];
  }
  bool operator==(const Shell3&) const = default;
};

// Empty when every face is a square and the six faces agree on shared edges.
std::string shell_defect(const DoubleGroupoid& g, const Shell3& sh);
bool is_well_formed(const DoubleGroupoid& g, const Shell3& sh);

// Edges of the unit 3-cube: edges[k][u][v] runs along coordinate k + 1 with the
// other two coordinates (in increasing order) fixed at u and v. Face squares get
// m from face_m.
Shell3 shell_from_edges(const std::array<std::array<std::array<int, 2>, 2>, 3>& edges,
                        const std::array<int, 6>& face_m);

// The two sides of the homotopy commutativity lemma; both throw malformed_shell.
Square odd_composite(const DoubleGroupoid& g, const Shell3& sh);
Square even_composite(const DoubleGroupoid& g, const Shell3& sh);
bool hcl_commutative(const DoubleGroupoid& g, const Shell3& sh);

// alpha2+ rebuilt from the other five faces with connections and inverses.
Square five_face_composite(const DoubleGroupoid& g, const Shell3& sh);
bool five_face_commutative(const DoubleGroupoid& g, const Shell3& sh);

// Degenerate cube on s along direction k (1..3).
Shell3 degenerate_shell(const DoubleGroupoid& g, const Square& s, int k);
// Glues sh to next along direction k; needs sh.face(k,+) == next.face(k,-).
Shell3 compose_shells(const DoubleGroupoid& g, const Shell3& sh, const Shell3& next, int k);

std::string to_text(const DoubleGroupoid& g, const Shell3& sh);
// Six "(m; c, a, d, b)" tuples separated by newlines; '#' starts a comment.
Shell3 parse_shell(const DoubleGroupoid& g, std::string_view text);

// Calls visit on every well-formed shell. Runs on `threads` workers when > 1;
// visit must then be safe to call concurrently.
void for_each_shell(const DoubleGroupoid& g, const std::function<void(const Shell3&)>& visit,
                    unsigned threads = 1);

struct LawCheck {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string witness;  // first failure

  bool ok() const { return failures == 0; }
};

struct LawReport {
  std::vector<LawCheck> checks;
  bool ok() const;
  const LawCheck& check(std::string_view name) const;
};

struct LawOptions {
  unsigned threads = 0;  // 0 picks hardware concurrency
  // Shell pairs per direction beyond which composition closure is sampled.
  std::uint64_t shell_pair_limit = 2000000;
  std::uint64_t sample_seed = 1;
};

// Every law of the structure, exhaustively over the finite carriers.
LawReport run_law_suite(const DoubleGroupoid& g, const LawOptions& options = {});

struct ShellCensus {
  std::uint64_t shells = 0;
  std::uint64_t commutative = 0;
  std::uint64_t disagreements = 0;  // hcl vs five-face
};
ShellCensus shell_census(const DoubleGroupoid& g, unsigned threads = 0);

}  // namespace xkit
