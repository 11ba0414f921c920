#include "xkit/double_groupoid.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <random>
#include <thread>
#include <unordered_map>

#include "xkit/error.hpp"
#include "xkit/parse.hpp"

namespace xkit {

int edge(const Square& s, int direction, int sign) {
  if (direction == 1) return sign < 0 ? s.c : s.b;
  return sign < 0 ? s.a : s.d;
}

DoubleGroupoid::DoubleGroupoid(CrossedModule x) : x_(std::move(x)) {
  const auto report = validate(x_);
  if (!report.ok()) {
    std::string why = report.counterexamples.empty() ? "axioms fail" : report.counterexamples.front();
    fail(Errc::invalid_crossed_module, x_.name + ": " + why);
  }
}

bool DoubleGroupoid::is_square(const Square& s) const {
  const int nm = M().order(), np = P().order();
  for (int e : {s.c, s.a, s.d, s.b})
    if (e < 0 || e >= np) return false;
  if (s.m < 0 || s.m >= nm) return false;
  const auto& p = P();
  return p.mul(p.mul(s.a, s.b), x_.mu[s.m]) == p.mul(s.c, s.d);
}

void DoubleGroupoid::require(const Square& s) const {
  if (!is_square(s)) fail(Errc::precondition_failed, "not a square: " + to_string(s));
}

std::vector<Square> DoubleGroupoid::squares() const {
  const auto& p = P();
  std::vector<Square> out;
  out.reserve(static_cast<std::size_t>(M().order()) * p.order() * p.order() * p.order());
  for (int m = 0; m < M().order(); ++m)
    for (int a = 0; a < p.order(); ++a)
      for (int c = 0; c < p.order(); ++c)
        for (int d = 0; d < p.order(); ++d) {
          const int b = p.mul(p.mul(p.inv(a), p.mul(c, d)), p.inv(x_.mu[m]));
          out.push_back({m, c, a, d, b});
        }
  return out;
}

Square DoubleGroupoid::compose_v(const Square& s, const Square& t) const {
  if (s.b != t.c)
    fail(Errc::not_composable, "bottom of " + to_string(s) + " is not the top of " + to_string(t));
  const auto& p = P();
  return {M().mul(t.m, x_.act(s.m, t.d)), s.c, p.mul(s.a, t.a), p.mul(s.d, t.d), t.b};
}

Square DoubleGroupoid::compose_h(const Square& s, const Square& t) const {
  if (s.d != t.a)
    fail(Errc::not_composable, "right of " + to_string(s) + " is not the left of " + to_string(t));
  const auto& p = P();
  return {M().mul(x_.act(s.m, t.b), t.m), p.mul(s.c, t.c), s.a, t.d, p.mul(s.b, t.b)};
}

Square DoubleGroupoid::inverse_v(const Square& s) const {
  const auto& p = P();
  return {M().inv(x_.act(s.m, p.inv(s.d))), s.b, p.inv(s.a), p.inv(s.d), s.c};
}

Square DoubleGroupoid::inverse_h(const Square& s) const {
  const auto& p = P();
  return {M().inv(x_.act(s.m, p.inv(s.b))), p.inv(s.c), s.d, s.a, p.inv(s.b)};
}

Square DoubleGroupoid::connection(int a, int sign) const {
  if (sign < 0) return {0, a, a, 0, 0};
  return {0, 0, 0, a, a};
}

Square DoubleGroupoid::thin_filler(int a, int c, int d) const {
  const auto& p = P();
  return {0, c, a, d, p.mul(p.inv(a), p.mul(c, d))};
}

Square DoubleGroupoid::compose(const std::vector<std::vector<Square>>& rows) const {
  if (rows.empty() || rows.front().empty()) fail(Errc::precondition_failed, "empty array of squares");
  std::optional<Square> out;
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) fail(Errc::precondition_failed, "ragged array of squares");
    Square acc = row.front();
    for (std::size_t j = 1; j < row.size(); ++j) acc = compose_h(acc, row[j]);
    out = out ? compose_v(*out, acc) : acc;
  }
  return *out;
}

std::string DoubleGroupoid::to_string(const Square& s) const {
  auto name = [](const FiniteGroup& g, int x) {
    return x >= 0 && x < g.order() ? g.label(x) : "?" + std::to_string(x);
  };
  return "(" + name(M(), s.m) + "; " + name(P(), s.c) + ", " + name(P(), s.a) + ", " + name(P(), s.d) +
         ", " + name(P(), s.b) + ")";
}

namespace {

int element_named(const FiniteGroup& g, const std::string& text) {
  const auto& labels = g.labels();
  auto it = std::find(labels.begin(), labels.end(), text);
  if (it != labels.end()) return static_cast<int>(it - labels.begin());
  if (text == "1") return 0;
  fail(Errc::parse, "unknown element '" + text + "'");
}

}  // namespace

Square DoubleGroupoid::parse_square(std::string_view text) const {
  const std::string body = trim(text);
  if (body.size() < 2 || body.front() != '(' || body.back() != ')')
    fail(Errc::parse, "square must look like (m; c, a, d, b): " + body);
  const std::string inner = body.substr(1, body.size() - 2);
  const auto semi = inner.find(';');
  if (semi == std::string::npos) fail(Errc::parse, "missing ';' in " + body);
  std::vector<std::string> edges;
  std::string rest = inner.substr(semi + 1);
  std::size_t start = 0;
  for (std::size_t i = 0; i <= rest.size(); ++i)
    if (i == rest.size() || rest[i] == ',') {
      edges.push_back(trim(std::string_view(rest).substr(start, i - start)));
      start = i + 1;
    }
  if (edges.size() != 4) fail(Errc::parse, "expected four edges in " + body);
  Square s{element_named(M(), trim(inner.substr(0, semi))), element_named(P(), edges[0]),
           element_named(P(), edges[1]), element_named(P(), edges[2]), element_named(P(), edges[3])};
  if (!is_square(s)) fail(Errc::parse, body + " breaks a*b*mu(m) = c*d");
  return s;
}

std::string shell_defect(const DoubleGroupoid& g, const Shell3& sh) {
  static const char* kNames[] = {"alpha1-", "alpha1+", "alpha2-", "alpha2+", "alpha3-", "alpha3+"};
  for (std::size_t f = 0; f < 6; ++f)
    if (!g.is_square(sh.faces[f])) return std::string(kNames[f]) + " is not a square";
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j)
      for (int sigma : {-1, 1})
        for (int tau : {-1, 1}) {
          const int lhs = edge(sh.face(j, tau), i, sigma);
          const int rhs = edge(sh.face(i, sigma), j - 1, tau);
          if (lhs != rhs)
            return "edge " + std::to_string(i) + (sigma < 0 ? "-" : "+") + " of alpha" + std::to_string(j) +
                   (tau < 0 ? "-" : "+") + " is " + g.P().label(lhs) + " but edge " + std::to_string(j - 1) +
                   (tau < 0 ? "-" : "+") + " of alpha" + std::to_string(i) + (sigma < 0 ? "-" : "+") + " is " +
                   g.P().label(rhs);
        }
  return {};
}

bool is_well_formed(const DoubleGroupoid& g, const Shell3& sh) { return shell_defect(g, sh).empty(); }

namespace {

void require_shell(const DoubleGroupoid& g, const Shell3& sh) {
  if (auto why = shell_defect(g, sh); !why.empty()) fail(Errc::malformed_shell, why);
}

Square row(const DoubleGroupoid& g, const Square& x, const Square& y, const Square& z) {
  return g.compose_h(g.compose_h(x, y), z);
}

// The composites below assume a well-formed shell.
Square odd_unchecked(const DoubleGroupoid& g, const Shell3& sh) {
  const Square& a1 = sh.face(1, -1);
  const Square& a2 = sh.face(2, 1);
  return g.compose_v(row(g, g.connection(a1.a, 1), a1, g.connection(a1.d, -1)),
                     row(g, sh.face(3, -1), a2, g.identity_h(a2.d)));
}

Square even_unchecked(const DoubleGroupoid& g, const Shell3& sh) {
  const Square& a1 = sh.face(1, 1);
  const Square& a2 = sh.face(2, -1);
  return g.compose_v(row(g, g.identity_h(a2.a), a2, sh.face(3, 1)),
                     row(g, g.connection(a1.a, 1), a1, g.connection(a1.d, -1)));
}

Square five_face_unchecked(const DoubleGroupoid& g, const Shell3& sh) {
  const auto& p = g.P();
  const Square& a0 = sh.face(1, -1);
  const Square& a1 = sh.face(1, 1);
  const Square& b0 = sh.face(3, -1);
  const Square& b1 = sh.face(3, 1);
  // The two remaining corners are connections turned by an inverse.
  const Square top_right = g.inverse_h(g.connection(p.inv(a0.d), 1));
  const Square bottom_left = g.inverse_v(g.connection(p.inv(b0.b), 1));
  const Square top = row(g, g.connection(p.inv(a0.a), 1), g.inverse_v(a0), top_right);
  const Square middle = row(g, g.inverse_h(b0), sh.face(2, -1), b1);
  const Square bottom = row(g, bottom_left, a1, g.connection(b1.b, -1));
  return g.compose_v(g.compose_v(top, middle), bottom);
}

}  // namespace

Square odd_composite(const DoubleGroupoid& g, const Shell3& sh) {
  require_shell(g, sh);
  return odd_unchecked(g, sh);
}

Square even_composite(const DoubleGroupoid& g, const Shell3& sh) {
  require_shell(g, sh);
  return even_unchecked(g, sh);
}

bool hcl_commutative(const DoubleGroupoid& g, const Shell3& sh) {
  require_shell(g, sh);
  return odd_unchecked(g, sh) == even_unchecked(g, sh);
}

Square five_face_composite(const DoubleGroupoid& g, const Shell3& sh) {
  require_shell(g, sh);
  return five_face_unchecked(g, sh);
}

bool five_face_commutative(const DoubleGroupoid& g, const Shell3& sh) {
  require_shell(g, sh);
  return five_face_unchecked(g, sh) == sh.face(2, 1);
}

namespace {

using CubeEdges = std::array<std::array<std::array<int, 2>, 2>, 3>;

// Edge slots (c, a, d, b) of each face, in face order.
constexpr int kFaceEdges[6][4][3] = {
    {{2, 0, 0}, {1, 0, 0}, {1, 0, 1}, {2, 0, 1}}, {{2, 1, 0}, {1, 1, 0}, {1, 1, 1}, {2, 1, 1}},
    {{2, 0, 0}, {0, 0, 0}, {0, 0, 1}, {2, 1, 0}}, {{2, 0, 1}, {0, 1, 0}, {0, 1, 1}, {2, 1, 1}},
    {{1, 0, 0}, {0, 0, 0}, {0, 1, 0}, {1, 1, 0}}, {{1, 0, 1}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}}};

int slot(const CubeEdges& e, int f, int j) {
  const auto& s = kFaceEdges[f][j];
  return e[s[0]][s[1]][s[2]];
}

// The value mu(m) must take on face f: b^-1 a^-1 c d.
int face_target(const DoubleGroupoid& g, const CubeEdges& e, int f) {
  const auto& p = g.P();
  return p.mul(p.inv(p.mul(slot(e, f, 1), slot(e, f, 3))), p.mul(slot(e, f, 0), slot(e, f, 2)));
}

std::vector<std::vector<int>> mu_fibres(const DoubleGroupoid& g) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(g.P().order()));
  const auto& mu = g.crossed_module().mu;
  for (int m = 0; m < g.M().order(); ++m) out[static_cast<std::size_t>(mu[m])].push_back(m);
  return out;
}

}  // namespace

Shell3 shell_from_edges(const CubeEdges& e, const std::array<int, 6>& face_m) {
  Shell3 sh;
  for (int f = 0; f < 6; ++f)
    sh.faces[static_cast<std::size_t>(f)] = {face_m[static_cast<std::size_t>(f)], slot(e, f, 0), slot(e, f, 1),
                                             slot(e, f, 2), slot(e, f, 3)};
  return sh;
}

Shell3 degenerate_shell(const DoubleGroupoid& g, const Square& s, int k) {
  if (k < 1 || k > 3) fail(Errc::precondition_failed, "direction must be 1, 2 or 3");
  if (!g.is_square(s)) fail(Errc::precondition_failed, "not a square: " + g.to_string(s));
  auto degenerate = [&](int direction, int e) { return direction == 1 ? g.identity_v(e) : g.identity_h(e); };
  Shell3 sh;
  for (int sigma : {-1, 1}) {
    sh.face(k, sigma) = s;
    for (int i = 1; i <= 3; ++i) {
      if (i < k) sh.face(i, sigma) = degenerate(k - 1, edge(s, i, sigma));
      if (i > k) sh.face(i, sigma) = degenerate(k, edge(s, i - 1, sigma));
    }
  }
  return sh;
}

Shell3 compose_shells(const DoubleGroupoid& g, const Shell3& sh, const Shell3& next, int k) {
  if (k < 1 || k > 3) fail(Errc::precondition_failed, "direction must be 1, 2 or 3");
  require_shell(g, sh);
  require_shell(g, next);
  if (sh.face(k, 1) != next.face(k, -1))
    fail(Errc::not_composable, "face alpha" + std::to_string(k) + "+ " + g.to_string(sh.face(k, 1)) +
                                   " differs from alpha" + std::to_string(k) + "- " +
                                   g.to_string(next.face(k, -1)));
  Shell3 out;
  out.face(k, -1) = sh.face(k, -1);
  out.face(k, 1) = next.face(k, 1);
  for (int i = 1; i <= 3; ++i) {
    if (i == k) continue;
    const int within = k < i ? k : k - 1;
    for (int sigma : {-1, 1})
      out.face(i, sigma) = within == 1 ? g.compose_v(sh.face(i, sigma), next.face(i, sigma))
                                       : g.compose_h(sh.face(i, sigma), next.face(i, sigma));
  }
  return out;
}

std::string to_text(const DoubleGroupoid& g, const Shell3& sh) {
  std::string out;
  for (const auto& f : sh.faces) out += g.to_string(f) + "\n";
  return out;
}

Shell3 parse_shell(const DoubleGroupoid& g, std::string_view text) {
  std::vector<Square> faces;
  std::size_t start = 0;
  const std::string body(text);
  while (start <= body.size()) {
    auto end = body.find('\n', start);
    if (end == std::string::npos) end = body.size();
    std::string line = body.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (!line.empty()) faces.push_back(g.parse_square(line));
    start = end + 1;
  }
  if (faces.size() != 6) fail(Errc::parse, "a shell has six faces, got " + std::to_string(faces.size()));
  Shell3 sh;
  std::copy(faces.begin(), faces.end(), sh.faces.begin());
  require_shell(g, sh);
  return sh;
}

namespace {

// Enumerates shells with E1(0,0) in [first_lo, first_hi). Faces are pruned as
// soon as their four edges are fixed.
class ShellScanner {
 public:
  explicit ShellScanner(const DoubleGroupoid& g) : g_(g), n_(g.P().order()), fibre_(mu_fibres(g)) {}

  void run(int first_lo, int first_hi, const std::function<void(const Shell3&)>& visit) {
    visit_ = &visit;
    for (int v = first_lo; v < first_hi; ++v) {
      e_[0][0][0] = v;
      level(1);
    }
  }

 private:
  // Slots in enumeration order: E1 x4, E2 x4, then E3(0,0), E3(0,1), E3(1,0), E3(1,1).
  static constexpr int kSlot[12][3] = {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 0, 1},
                                       {1, 1, 0}, {1, 1, 1}, {2, 0, 0}, {2, 0, 1}, {2, 1, 0}, {2, 1, 1}};

  bool empty(int f) const { return fibre_[static_cast<std::size_t>(face_target(g_, e_, f))].empty(); }

  bool prune(int filled) const {
    switch (filled) {
      case 8: return empty(4) || empty(5);
      case 10: return empty(0);
      case 11: return empty(2);
      case 12: return empty(1) || empty(3);
      default: return false;
    }
  }

  void level(int slot) {
    if (prune(slot)) return;
    if (slot == 12) {
      std::array<int, 6> targets;
      for (int f = 0; f < 6; ++f) targets[static_cast<std::size_t>(f)] = face_target(g_, e_, f);
      emit(targets, 0);
      return;
    }
    auto& cell = e_[kSlot[slot][0]][kSlot[slot][1]][kSlot[slot][2]];
    for (int v = 0; v < n_; ++v) {
      cell = v;
      level(slot + 1);
    }
  }

  void emit(const std::array<int, 6>& targets, int f) {
    if (f == 6) {
      (*visit_)(shell_from_edges(e_, m_));
      return;
    }
    for (int m : fibre_[targets[static_cast<std::size_t>(f)]]) {
      m_[static_cast<std::size_t>(f)] = m;
      emit(targets, f + 1);
    }
  }

  const DoubleGroupoid& g_;
  int n_;
  std::vector<std::vector<int>> fibre_;
  CubeEdges e_{};
  std::array<int, 6> m_{};
  const std::function<void(const Shell3&)>* visit_ = nullptr;
};

unsigned worker_count(unsigned requested) {
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

// Splits the first edge value across workers; make_visit(worker) gives each
// worker its own callback.
void scan_parallel(const DoubleGroupoid& g, unsigned threads,
                   const std::function<std::function<void(const Shell3&)>(unsigned)>& make_visit) {
  const int n = g.P().order();
  threads = std::min<unsigned>(worker_count(threads), static_cast<unsigned>(n));
  if (threads <= 1) {
    ShellScanner(g).run(0, n, make_visit(0));
    return;
  }
  std::vector<std::function<void(const Shell3&)>> visits;
  for (unsigned w = 0; w < threads; ++w) visits.push_back(make_visit(w));
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    const int lo = static_cast<int>(w) * n / static_cast<int>(threads);
    const int hi = static_cast<int>(w + 1) * n / static_cast<int>(threads);
    pool.emplace_back([&g, lo, hi, &visit = visits[w]] { ShellScanner(g).run(lo, hi, visit); });
  }
}

}  // namespace

void for_each_shell(const DoubleGroupoid& g, const std::function<void(const Shell3&)>& visit,
                    unsigned threads) {
  scan_parallel(g, threads == 0 ? 1 : threads, [&](unsigned) { return visit; });
}

ShellCensus shell_census(const DoubleGroupoid& g, unsigned threads) {
  threads = worker_count(threads);
  std::vector<ShellCensus> parts(threads);
  scan_parallel(g, threads, [&](unsigned w) {
    return std::function<void(const Shell3&)>([&g, &part = parts[w]](const Shell3& sh) {
      ++part.shells;
      const bool hcl = odd_unchecked(g, sh) == even_unchecked(g, sh);
      const bool five = five_face_unchecked(g, sh) == sh.face(2, 1);
      part.commutative += hcl;
      part.disagreements += hcl != five;
    });
  });
  ShellCensus total;
  for (const auto& p : parts) {
    total.shells += p.shells;
    total.commutative += p.commutative;
    total.disagreements += p.disagreements;
  }
  return total;
}

bool LawReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const LawCheck& c) { return c.ok(); });
}

const LawCheck& LawReport::check(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  fail(Errc::precondition_failed, "no law named " + std::string(name));
}

namespace {

class LawRunner {
 public:
  LawRunner(const DoubleGroupoid& g, const LawOptions& options)
      : g_(g), options_(options), all_(g.squares()), np_(g.P().order()), fibre_(mu_fibres(g)) {
    for (const auto& s : all_) {
      by_top_[s.c].push_back(s);
      by_left_[s.a].push_back(s);
      by_corner_[static_cast<std::size_t>(s.c) * np_ + s.a].push_back(s);
    }
  }

  LawReport run() {
    invariant_ = &law("quintuple invariant");
    carrier();
    groupoid_laws();
    interchange();
    connections();
    thin_fillers();
    thin_closure();
    shells();
    LawReport report;
    report.checks.assign(checks_.begin(), checks_.end());
    return report;
  }

 private:
  LawCheck& law(const std::string& name) {
    for (auto& c : checks_)
      if (c.name == name) return c;
    auto& c = checks_.emplace_back();
    c.name = name;
    return c;
  }

  // The witness is only rendered for the first failure.
  template <class Witness>
  static void expect(LawCheck& c, bool ok, Witness&& witness) {
    ++c.cases;
    if (!ok && c.failures++ == 0) c.witness = witness();
  }
  template <class Witness>
  void expect(const std::string& name, bool ok, Witness&& witness) {
    expect(law(name), ok, witness);
  }

  void output(const Square& s) {
    expect(*invariant_, g_.is_square(s), [&] { return g_.to_string(s); });
  }

  std::string show(std::initializer_list<Square> ss) const {
    std::string out;
    for (const auto& s : ss) out += (out.empty() ? "" : " ") + g_.to_string(s);
    return out;
  }

  void carrier() {
    std::uint64_t brute = 0;
    for (int m = 0; m < g_.M().order(); ++m)
      for (int c = 0; c < np_; ++c)
        for (int a = 0; a < np_; ++a)
          for (int d = 0; d < np_; ++d)
            for (int b = 0; b < np_; ++b) brute += g_.is_square({m, c, a, d, b});
    const std::uint64_t expected = static_cast<std::uint64_t>(g_.M().order()) * np_ * np_ * np_;
    expect("carrier size", brute == all_.size() && brute == expected,
           [&] { return std::to_string(brute) + " quintuples, " + std::to_string(all_.size()) + " listed"; });
    for (const auto& s : all_) output(s);
  }

  const std::vector<Square>& below(const Square& s) { return by_top_[s.b]; }
  const std::vector<Square>& beside(const Square& s) { return by_left_[s.d]; }

  void groupoid_laws() {
    auto& v_assoc = law("vertical associativity");
    auto& h_assoc = law("horizontal associativity");
    for (const auto& s : all_) {
      const Square iv = g_.inverse_v(s), ih = g_.inverse_h(s);
      output(iv);
      output(ih);
      expect("vertical identities",
             g_.compose_v(g_.identity_v(s.c), s) == s && g_.compose_v(s, g_.identity_v(s.b)) == s,
             [&] { return g_.to_string(s); });
      expect("horizontal identities",
             g_.compose_h(g_.identity_h(s.a), s) == s && g_.compose_h(s, g_.identity_h(s.d)) == s,
             [&] { return g_.to_string(s); });
      expect("vertical inverses",
             g_.compose_v(s, iv) == g_.identity_v(s.c) && g_.compose_v(iv, s) == g_.identity_v(s.b),
             [&] { return g_.to_string(s); });
      expect("horizontal inverses",
             g_.compose_h(s, ih) == g_.identity_h(s.a) && g_.compose_h(ih, s) == g_.identity_h(s.d),
             [&] { return g_.to_string(s); });
      for (const auto& t : below(s)) {
        const Square st = g_.compose_v(s, t);
        output(st);
        for (const auto& u : below(t))
          expect(v_assoc, g_.compose_v(st, u) == g_.compose_v(s, g_.compose_v(t, u)),
                 [&] { return show({s, t, u}); });
      }
      for (const auto& t : beside(s)) {
        const Square st = g_.compose_h(s, t);
        output(st);
        for (const auto& u : beside(t))
          expect(h_assoc, g_.compose_h(st, u) == g_.compose_h(s, g_.compose_h(t, u)),
                 [&] { return show({s, t, u}); });
      }
    }
  }

  void interchange() {
    auto& c = law("interchange");
    for (const auto& s : all_)
      for (const auto& t : beside(s)) {
        const Square top = g_.compose_h(s, t);
        for (const auto& u : below(s)) {
          const Square left = g_.compose_v(s, u);
          for (const auto& v : by_corner_[static_cast<std::size_t>(t.b) * np_ + u.d]) {
            ++c.cases;
            const Square rows = g_.compose_v(top, g_.compose_h(u, v));
            const Square cols = g_.compose_h(left, g_.compose_v(t, v));
            if (rows != cols && c.failures++ == 0) c.witness = show({s, t, u, v});
          }
        }
      }
  }

  void connections() {
    const auto& p = g_.P();
    for (int a = 0; a < np_; ++a) {
      const Square lo = g_.connection(a, -1), hi = g_.connection(a, 1);
      output(lo);
      output(hi);
      expect("connections are thin", g_.is_thin(lo) && g_.is_thin(hi), [&] { return p.label(a); });
      expect("cancellation, vertical", g_.compose({{hi}, {lo}}) == g_.identity_h(a), [&] { return p.label(a); });
      expect("cancellation, horizontal", g_.compose({{hi, lo}}) == g_.identity_v(a), [&] { return p.label(a); });
      for (int b = 0; b < np_; ++b) {
        const int ab = p.mul(a, b);
        expect("transport, Gamma+",
               g_.compose({{hi, g_.identity_h(a)}, {g_.identity_v(a), g_.connection(b, 1)}}) ==
                   g_.connection(ab, 1),
               [&] { return p.label(a) + ", " + p.label(b); });
        expect("transport, Gamma-",
               g_.compose({{lo, g_.identity_v(b)}, {g_.identity_h(b), g_.connection(b, -1)}}) ==
                   g_.connection(ab, -1),
               [&] { return p.label(a) + ", " + p.label(b); });
      }
    }
  }

  void thin_fillers() {
    std::vector<int> count(static_cast<std::size_t>(np_) * np_ * np_, 0);
    auto box = [&](const Square& s) { return (static_cast<std::size_t>(s.a) * np_ + s.c) * np_ + s.d; };
    for (const auto& s : all_)
      if (g_.is_thin(s)) ++count[box(s)];
    for (int a = 0; a < np_; ++a)
      for (int c = 0; c < np_; ++c)
        for (int d = 0; d < np_; ++d) {
          const Square f = g_.thin_filler(a, c, d);
          output(f);
          expect("unique thin filler", count[box(f)] == 1 && g_.is_thin(f),
                 [&] { return std::to_string(count[box(f)]) + " thin fillers on " + g_.to_string(f); });
        }
  }

  void thin_closure() {
    std::vector<Square> thin;
    for (const auto& s : all_)
      if (g_.is_thin(s)) thin.push_back(s);
    for (int a = 0; a < np_; ++a)
      expect("thin closure", g_.is_thin(g_.identity_v(a)) && g_.is_thin(g_.identity_h(a)),
             [&] { return g_.P().label(a); });
    for (const auto& s : thin) {
      for (const auto& t : below(s))
        if (g_.is_thin(t)) expect("thin closure", g_.is_thin(g_.compose_v(s, t)), [&] { return show({s, t}); });
      for (const auto& t : beside(s))
        if (g_.is_thin(t)) expect("thin closure", g_.is_thin(g_.compose_h(s, t)), [&] { return show({s, t}); });
    }
  }

  void shells() {
    const auto census = shell_census(g_, options_.threads);
    auto& agree = law("hcl agrees with five-face formula");
    agree.cases = census.shells;
    agree.failures = census.disagreements;
    if (census.disagreements) agree.witness = std::to_string(census.disagreements) + " shells disagree";

    auto& degenerate = law("degenerate shells commute");
    for (const auto& s : all_)
      for (int k = 1; k <= 3; ++k) {
        ++degenerate.cases;
        const Shell3 sh = degenerate_shell(g_, s, k);
        if (!is_well_formed(g_, sh) || !hcl_commutative(g_, sh)) {
          if (degenerate.failures++ == 0) degenerate.witness = g_.to_string(s) + " along " + std::to_string(k);
        }
      }

    if (census.shells <= options_.shell_pair_limit / 64) exhaustive_shell_pairs();
    else sampled_shell_pairs();
  }

  std::size_t key(const Square& s) const {
    return ((static_cast<std::size_t>(s.m) * np_ + s.c) * np_ + s.a) * np_ + s.d;
  }

  void judge_pair(const Shell3& x, bool x_comm, const Shell3& y, bool y_comm, int k) {
    const Shell3 z = compose_shells(g_, x, y, k);
    const bool well = is_well_formed(g_, z);
    expect("composite shells are well formed", well, [&] { return to_text(g_, x) + to_text(g_, y); });
    if (!well) return;
    const bool z_comm = hcl_commutative(g_, z);
    const std::string dir = " (direction " + std::to_string(k) + ")";
    if (x_comm && y_comm) expect("commutative shells compose" + dir, z_comm, [&] { return to_text(g_, x) + to_text(g_, y); });
    else if (x_comm != y_comm)
      expect("commutative with non-commutative stays non-commutative" + dir, !z_comm,
             [&] { return to_text(g_, x) + to_text(g_, y); });
  }

  void exhaustive_shell_pairs() {
    std::vector<Shell3> shells;
    for_each_shell(g_, [&](const Shell3& sh) { shells.push_back(sh); });
    std::vector<bool> comm(shells.size());
    for (std::size_t i = 0; i < shells.size(); ++i) comm[i] = hcl_commutative(g_, shells[i]);
    for (int k = 1; k <= 3; ++k) {
      std::unordered_map<std::size_t, std::vector<std::size_t>> by_lower;
      for (std::size_t i = 0; i < shells.size(); ++i) by_lower[key(shells[i].face(k, -1))].push_back(i);
      for (std::size_t i = 0; i < shells.size(); ++i) {
        auto it = by_lower.find(key(shells[i].face(k, 1)));
        if (it == by_lower.end()) continue;
        for (std::size_t j : it->second) judge_pair(shells[i], comm[i], shells[j], comm[j], k);
      }
    }
  }

  // Random well-formed shell, with face (k, -1) equal to *pinned when given.
  std::optional<Shell3> random_shell(std::mt19937_64& rng, const Square* pinned, int k) {
    std::uniform_int_distribution<int> pick(0, np_ - 1);
    CubeEdges e{};
    for (auto& plane : e)
      for (auto& row : plane)
        for (auto& v : row) v = pick(rng);
    const int pinned_face = 2 * (k - 1);
    if (pinned) {
      const int values[4] = {pinned->c, pinned->a, pinned->d, pinned->b};
      for (int j = 0; j < 4; ++j) {
        const auto& slot = kFaceEdges[pinned_face][j];
        e[slot[0]][slot[1]][slot[2]] = values[j];
      }
    }
    std::array<int, 6> m{};
    for (int f = 0; f < 6; ++f) {
      if (pinned && f == pinned_face) {
        m[static_cast<std::size_t>(f)] = pinned->m;
        continue;
      }
      const auto& fibre = fibre_[static_cast<std::size_t>(face_target(g_, e, f))];
      if (fibre.empty()) return std::nullopt;
      m[static_cast<std::size_t>(f)] = fibre[std::uniform_int_distribution<std::size_t>(0, fibre.size() - 1)(rng)];
    }
    return shell_from_edges(e, m);
  }

  void sampled_shell_pairs() {
    std::mt19937_64 rng(options_.sample_seed);
    const std::uint64_t budget = options_.shell_pair_limit / 64;
    for (int k = 1; k <= 3; ++k) {
      std::uint64_t judged = 0, attempts = 0;
      while (judged < budget && attempts < budget * 4096) {
        ++attempts;
        auto x = random_shell(rng, nullptr, k);
        if (!x) continue;
        auto y = random_shell(rng, &x->face(k, 1), k);
        if (!y) continue;
        judge_pair(*x, hcl_commutative(g_, *x), *y, hcl_commutative(g_, *y), k);
        ++judged;
      }
      law("sampled shell pairs (direction " + std::to_string(k) + ")").cases = judged;
    }
  }

  const DoubleGroupoid& g_;
  LawOptions options_;
  std::vector<Square> all_;
  int np_;
  std::vector<std::vector<int>> fibre_;
  std::unordered_map<int, std::vector<Square>> by_top_, by_left_;
  std::unordered_map<std::size_t, std::vector<Square>> by_corner_;  // keyed by (top, left)
  std::deque<LawCheck> checks_;
  LawCheck* invariant_ = nullptr;
};

}  // namespace

LawReport run_law_suite(const DoubleGroupoid& g, const LawOptions& options) {
  return LawRunner(g, options).run();
}

}  // namespace xkit
