#include "xkit/crossed_module.hpp"

#include <algorithm>
#include <numeric>
#include <regex>

#include "xkit/enumerate.hpp"
#include "xkit/error.hpp"

namespace xkit {

namespace {

constexpr std::size_t kMaxCounterexamples = 5;

void note(CrossedModuleReport& r, const std::string& text) {
  if (r.counterexamples.size() < 4 * kMaxCounterexamples) r.counterexamples.push_back(text);
}

std::string lbl(const FiniteGroup& g, int x) { return g.label(x); }

}  // namespace

CrossedModuleReport validate(const CrossedModule& x) {
  const FiniteGroup &M = x.M, &P = x.P;
  CrossedModuleReport r;
  if (x.mu.size() != static_cast<std::size_t>(M.order()) ||
      x.action.size() != static_cast<std::size_t>(M.order()) * P.order())
    fail(Errc::invalid_crossed_module, "mu or action table has the wrong size");
  std::size_t hits = 0;
  for (int a = 0; a < M.order() && hits < kMaxCounterexamples; ++a)
    for (int b = 0; b < M.order() && hits < kMaxCounterexamples; ++b)
      if (x.mu[M.mul(a, b)] != P.mul(x.mu[a], x.mu[b])) {
        r.mu_hom_ok = false;
        ++hits;
        note(r, "mu not multiplicative at (" + lbl(M, a) + ", " + lbl(M, b) + ")");
      }
  hits = 0;
  for (int m = 0; m < M.order(); ++m)
    if (x.act(m, 0) != m) {
      r.action_ok = false;
      if (hits++ < kMaxCounterexamples) note(r, "identity moves " + lbl(M, m));
    }
  for (int p = 0; p < P.order(); ++p)
    for (int q = 0; q < P.order(); ++q)
      for (int m = 0; m < M.order(); ++m)
        if (x.act(m, P.mul(p, q)) != x.act(x.act(m, p), q)) {
          r.action_ok = false;
          if (hits++ < kMaxCounterexamples)
            note(r, "m^(pq) != (m^p)^q at m=" + lbl(M, m) + " p=" + lbl(P, p) + " q=" + lbl(P, q));
        }
  for (int p = 0; p < P.order(); ++p)
    for (int a = 0; a < M.order(); ++a)
      for (int b = 0; b < M.order(); ++b)
        if (x.act(M.mul(a, b), p) != M.mul(x.act(a, p), x.act(b, p))) {
          r.action_ok = false;
          if (hits++ < kMaxCounterexamples)
            note(r, "action of " + lbl(P, p) + " is not a homomorphism at (" + lbl(M, a) + ", " + lbl(M, b) + ")");
        }
  hits = 0;
  for (int m = 0; m < M.order(); ++m)
    for (int p = 0; p < P.order(); ++p)
      if (x.mu[x.act(m, p)] != P.conj(x.mu[m], p)) {
        r.cm1_ok = false;
        if (hits++ < kMaxCounterexamples) note(r, "CM1 fails at m=" + lbl(M, m) + " p=" + lbl(P, p));
      }
  hits = 0;
  for (int m = 0; m < M.order(); ++m)
    for (int n = 0; n < M.order(); ++n)
      if (M.conj(m, n) != x.act(m, x.mu[n])) {
        r.cm2_ok = false;
        if (hits++ < kMaxCounterexamples) note(r, "CM2 fails at m=" + lbl(M, m) + " n=" + lbl(M, n));
      }
  return r;
}

Consequences consequences(const CrossedModule& x) {
  Consequences c;
  std::vector<int> image(x.mu.begin(), x.mu.end());
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  c.im_normal = is_normal_subgroup(x.P, image);
  c.ker_central = true;
  c.ker_fixed_by_im = true;
  for (int k = 0; k < x.M.order(); ++k) {
    if (x.mu[k] != 0) continue;
    for (int m = 0; m < x.M.order(); ++m)
      if (x.M.mul(k, m) != x.M.mul(m, k)) c.ker_central = false;
    for (int p : image)
      if (x.act(k, p) != k) c.ker_fixed_by_im = false;
  }
  return c;
}

CrossedModule make_normal_inclusion(const FiniteGroup& p, const std::vector<int>& subgroup, std::string name) {
  std::vector<int> elements = subgroup;
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (generated_subgroup(p, elements) != elements)
    fail(Errc::precondition_failed, "the given elements are not a subgroup");
  if (!is_normal_subgroup(p, elements)) fail(Errc::precondition_failed, "subgroup is not normal");
  CrossedModule x;
  x.name = std::move(name);
  x.M = subgroup_table(p, elements);
  x.P = p;
  x.mu = elements;
  std::vector<int> index(p.order(), -1);
  for (std::size_t i = 0; i < elements.size(); ++i) index[elements[i]] = static_cast<int>(i);
  x.action.resize(elements.size() * p.order());
  for (std::size_t m = 0; m < elements.size(); ++m)
    for (int g = 0; g < p.order(); ++g) x.action[m * p.order() + g] = index[p.conj(elements[m], g)];
  return x;
}

CrossedModule make_inner_automorphism(const FiniteGroup& m, std::string name) {
  std::vector<std::vector<int>> auts;
  CrossedModule x;
  x.name = std::move(name);
  x.M = m;
  x.P = automorphism_group(m, &auts);
  for (int g = 0; g < m.order(); ++g) {
    std::vector<int> conj(m.order());
    for (int y = 0; y < m.order(); ++y) conj[y] = m.conj(y, g);
    auto it = std::find(auts.begin(), auts.end(), conj);
    x.mu.push_back(static_cast<int>(it - auts.begin()));
  }
  x.action.resize(static_cast<std::size_t>(m.order()) * x.P.order());
  for (int g = 0; g < m.order(); ++g)
    for (int a = 0; a < x.P.order(); ++a) x.action[static_cast<std::size_t>(g) * x.P.order() + a] = auts[a][g];
  return x;
}

CrossedModule make_zero_module(const FiniteGroup& m, const FiniteGroup& p, std::vector<int> action, std::string name) {
  if (!m.is_abelian()) fail(Errc::precondition_failed, "module carrier is not abelian");
  CrossedModule x;
  x.name = std::move(name);
  x.M = m;
  x.P = p;
  x.mu.assign(m.order(), 0);
  x.action = std::move(action);
  if (x.action.size() != static_cast<std::size_t>(m.order()) * p.order())
    fail(Errc::precondition_failed, "action table has the wrong size");
  auto report = validate(x);
  if (!report.action_ok) fail(Errc::precondition_failed, "not an action by automorphisms: " + report.counterexamples.front());
  return x;
}

CrossedModule make_central_epi(const FiniteGroup& m, const FiniteGroup& p, std::vector<int> mu, std::string name) {
  if (!is_homomorphism(m, p, mu)) fail(Errc::precondition_failed, "map is not a homomorphism");
  std::vector<int> lift(p.order(), -1);
  for (int g = 0; g < m.order(); ++g)
    if (lift[mu[g]] < 0) lift[mu[g]] = g;
  if (std::count(lift.begin(), lift.end(), -1) > 0) fail(Errc::precondition_failed, "map is not surjective");
  for (int k = 0; k < m.order(); ++k)
    if (mu[k] == 0)
      for (int g = 0; g < m.order(); ++g)
        if (m.mul(k, g) != m.mul(g, k)) fail(Errc::precondition_failed, "kernel is not central");
  CrossedModule x;
  x.name = std::move(name);
  x.M = m;
  x.P = p;
  x.mu = std::move(mu);
  x.action.resize(static_cast<std::size_t>(m.order()) * p.order());
  for (int g = 0; g < m.order(); ++g)
    for (int q = 0; q < p.order(); ++q) x.action[static_cast<std::size_t>(g) * p.order() + q] = m.conj(g, lift[q]);
  return x;
}

CrossedModule make_standard(StandardKind kind, const StandardData& data, std::string name) {
  switch (kind) {
    case StandardKind::normal_inclusion: return make_normal_inclusion(data.P, data.subgroup, std::move(name));
    case StandardKind::inner_automorphism: return make_inner_automorphism(data.M, std::move(name));
    case StandardKind::zero_module: return make_zero_module(data.M, data.P, data.action, std::move(name));
    case StandardKind::central_epi: return make_central_epi(data.M, data.P, data.mu, std::move(name));
  }
  fail(Errc::precondition_failed, "unknown constructor kind");
}

std::vector<CrossedModule> crossed_module_catalogue() {
  std::vector<CrossedModule> out;
  const auto s3 = FiniteGroup::symmetric(3);
  const auto a4 = FiniteGroup::alternating(4);
  const auto c2 = FiniteGroup::cyclic(2), c3 = FiniteGroup::cyclic(3), c4 = FiniteGroup::cyclic(4);
  const auto v4 = FiniteGroup::klein_four();
  const auto q8 = FiniteGroup::quaternion();

  std::vector<int> a3;
  for (int g = 0; g < s3.order(); ++g)
    if (s3.element_order(g) != 2) a3.push_back(g);
  out.push_back(make_normal_inclusion(s3, a3, "A3 in S3"));
  std::vector<int> klein;
  for (int g = 0; g < a4.order(); ++g)
    if (a4.element_order(g) <= 2) klein.push_back(g);
  out.push_back(make_normal_inclusion(a4, klein, "V4 in A4"));
  out.push_back(make_normal_inclusion(FiniteGroup::dihedral(4), {0, 1, 2, 3}, "C4 in D4"));
  std::vector<int> all(s3.order());
  std::iota(all.begin(), all.end(), 0);
  out.push_back(make_normal_inclusion(s3, all, "S3 -> S3"));
  out.push_back(make_normal_inclusion(FiniteGroup::cyclic(6), {0}, "1 in C6"));
  out.push_back(make_normal_inclusion(c2, {0, 1}, "C2 -> C2"));

  out.push_back(make_inner_automorphism(s3, "S3 -> Aut S3"));
  out.push_back(make_inner_automorphism(q8, "Q8 -> Aut Q8"));
  out.push_back(make_inner_automorphism(v4, "V4 -> Aut V4"));

  out.push_back(make_zero_module(c3, c2, {0, 0, 1, 1, 2, 2}, "C3 trivial C2-module"));
  out.push_back(make_zero_module(c3, c2, {0, 0, 1, 2, 2, 1}, "C3 sign C2-module"));
  // C2 swaps the two factors of V4 = C2 x C2
  out.push_back(make_zero_module(v4, c2, {0, 0, 1, 2, 2, 1, 3, 3}, "V4 swap C2-module"));

  out.push_back(make_central_epi(c4, c2, {0, 1, 0, 1}, "C4 -> C2"));
  std::vector<int> q8_to_v4(8);
  for (int g = 0; g < 8; ++g) q8_to_v4[g] = g / 2;
  out.push_back(make_central_epi(q8, v4, q8_to_v4, "Q8 -> V4"));
  return out;
}

GroupPresentation parse_inline_presentation(std::string_view text) {
  std::string body = trim(text);
  auto bar = body.find('|');
  std::string gens = trim(body.substr(0, bar));
  std::string rels = bar == std::string::npos ? "" : trim(body.substr(bar + 1));
  std::string field = "gens: " + gens;
  if (!rels.empty()) field += "\nrels: " + rels;
  return parse_presentation(field);
}

std::string to_inline_text(const GroupPresentation& p) {
  std::string out;
  for (std::size_t i = 0; i < p.generators.size(); ++i) out += (i ? ", " : "") + p.generators[i];
  out += " |";
  for (std::size_t i = 0; i < p.relators.size(); ++i) out += (i ? ", " : " ") + p.render(p.relators[i]);
  return out;
}

CrossedModuleSpec parse_crossed_module(std::string_view text) {
  CrossedModuleSpec spec;
  std::vector<std::string> mu_text, act_text;
  bool has_m = false, has_p = false;
  for (const auto& [key, value] : parse_fields(text)) {
    if (key == "name") spec.name = value;
    else if (key == "M") spec.M = parse_inline_presentation(value), has_m = true;
    else if (key == "P") spec.P = parse_inline_presentation(value), has_p = true;
    else if (key == "mu") for (auto& piece : split_top(value, ',')) mu_text.push_back(piece);
    else if (key == "act") for (auto& piece : split_top(value, ',')) act_text.push_back(piece);
    else fail(Errc::parse, "unknown crossed module field '" + key + "'");
  }
  if (!has_m || !has_p) fail(Errc::parse, "crossed module needs M: and P: lines");
  spec.mu.assign(spec.M.generators.size(), FreeWord());
  spec.action.assign(spec.P.generators.size(), {});
  for (std::size_t p = 0; p < spec.P.generators.size(); ++p)
    for (std::size_t m = 0; m < spec.M.generators.size(); ++m)
      spec.action[p].push_back(FreeWord::generator(static_cast<int>(m)));
  for (const auto& entry : mu_text) {
    auto sides = split_top(entry, '=');
    if (sides.size() != 2) fail(Errc::parse, "mu entry must read m = word, got '" + entry + "'");
    int m = spec.M.generator_index(sides[0]);
    if (m < 0) fail(Errc::parse, "mu names unknown generator '" + sides[0] + "'");
    spec.mu[m] = spec.P.word(sides[1]);
  }
  static const std::regex act_lhs(R"(\s*([A-Za-z0-9_.~']+)\s*\(\s*([A-Za-z0-9_.~']+)\s*\)\s*)");
  for (const auto& entry : act_text) {
    auto eq = entry.find('=');
    std::smatch match;
    std::string lhs = eq == std::string::npos ? entry : entry.substr(0, eq);
    if (eq == std::string::npos || !std::regex_match(lhs, match, act_lhs))
      fail(Errc::parse, "act entry must read p(m) = word, got '" + entry + "'");
    int p = spec.P.generator_index(match[1]), m = spec.M.generator_index(match[2]);
    if (p < 0 || m < 0) fail(Errc::parse, "act entry uses unknown generators: '" + entry + "'");
    spec.action[p][m] = spec.M.word(entry.substr(eq + 1));
  }
  return spec;
}

std::string to_text(const CrossedModuleSpec& spec) {
  std::string out;
  if (!spec.name.empty()) out += "name: " + spec.name + "\n";
  out += "M: " + to_inline_text(spec.M) + "\nP: " + to_inline_text(spec.P) + "\n";
  std::vector<std::string> mu, act;
  for (std::size_t m = 0; m < spec.mu.size(); ++m)
    if (!spec.mu[m].is_identity()) mu.push_back(spec.M.generators[m] + " = " + spec.P.render(spec.mu[m]));
  for (std::size_t p = 0; p < spec.action.size(); ++p)
    for (std::size_t m = 0; m < spec.action[p].size(); ++m)
      if (spec.action[p][m] != FreeWord::generator(static_cast<int>(m)))
        act.push_back(spec.P.generators[p] + "(" + spec.M.generators[m] + ") = " + spec.M.render(spec.action[p][m]));
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
  };
  if (!mu.empty()) out += "mu: " + join(mu) + "\n";
  if (!act.empty()) out += "act: " + join(act) + "\n";
  return out;
}

namespace {

EnumeratedGroup enumerate_carrier(const GroupPresentation& p, std::size_t bound, const char* which) {
  try {
    return enumerate_fp_group(p, bound);
  } catch (const Error& e) {
    if (e.code() != Errc::unbounded) throw;
    fail(Errc::infinite_carrier, std::string("carrier ") + which + " did not close within bound " + std::to_string(bound));
  }
}

// Image of every element under the homomorphism given on generators; empty when not well defined.
std::vector<int> extend_on_generators(const EnumeratedGroup& src, const FiniteGroup& dst,
                                      const std::vector<int>& gen_images) {
  std::vector<int> out(src.order());
  for (int g = 0; g < src.order(); ++g) {
    int x = 0;
    for (const Letter& l : src.normal_form(g).letters())
      x = dst.mul(x, l.sign > 0 ? gen_images[l.gen] : dst.inv(gen_images[l.gen]));
    out[g] = x;
  }
  if (!is_homomorphism(src.group(), dst, out)) return {};
  return out;
}

}  // namespace

CrossedModule realize(const CrossedModuleSpec& spec, std::size_t bound) {
  auto M = enumerate_carrier(spec.M, bound, "M");
  auto P = enumerate_carrier(spec.P, bound, "P");
  CrossedModule x;
  x.name = spec.name;
  x.M = M.group();
  x.P = P.group();
  std::vector<int> mu_gens;
  for (const auto& w : spec.mu) mu_gens.push_back(P.evaluate(w));
  x.mu = extend_on_generators(M, x.P, mu_gens);
  if (x.mu.empty()) fail(Errc::precondition_failed, "mu does not respect the relators of M");
  std::vector<std::vector<int>> gen_auts, gen_inverse;
  for (std::size_t p = 0; p < spec.action.size(); ++p) {
    std::vector<int> images;
    for (const auto& w : spec.action[p]) images.push_back(M.evaluate(w));
    auto aut = extend_on_generators(M, x.M, images);
    if (aut.empty()) fail(Errc::precondition_failed, "action of " + spec.P.generators[p] + " is not an endomorphism of M");
    std::vector<int> inverse(aut.size(), -1);
    for (std::size_t m = 0; m < aut.size(); ++m) inverse[aut[m]] = static_cast<int>(m);
    if (std::count(inverse.begin(), inverse.end(), -1) > 0)
      fail(Errc::precondition_failed, "action of " + spec.P.generators[p] + " is not bijective");
    gen_auts.push_back(std::move(aut));
    gen_inverse.push_back(std::move(inverse));
  }
  x.action.resize(static_cast<std::size_t>(x.M.order()) * x.P.order());
  for (int p = 0; p < x.P.order(); ++p)
    for (int m = 0; m < x.M.order(); ++m) {
      int y = m;
      for (const Letter& l : P.normal_form(p).letters()) y = (l.sign > 0 ? gen_auts : gen_inverse)[l.gen][y];
      x.action[static_cast<std::size_t>(m) * x.P.order() + p] = y;
    }
  return x;
}

}  // namespace xkit
