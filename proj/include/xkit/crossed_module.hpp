#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "xkit/finite_group.hpp"
#include "xkit/presentation.hpp"

namespace xkit {

// mu: M -> P with a right action of P on M, both carriers finite.
struct CrossedModule {
  std::string name;
  FiniteGroup M, P;
  std::vector<int> mu;
  std::vector<int> action;  // action[m * |P| + p] = m^p

  int act(int m, int p) const { return action[static_cast<std::size_t>(m) * P.order() + p]; }
};

struct CrossedModuleReport {
  bool mu_hom_ok = true;
  bool action_ok = true;
  bool cm1_ok = true;
  bool cm2_ok = true;
  std::vector<std::string> counterexamples;  // a few per failing axiom

  bool ok() const { return mu_hom_ok && action_ok && cm1_ok && cm2_ok; }
};

CrossedModuleReport validate(const CrossedModule& x);

struct Consequences {
  bool im_normal = false;
  bool ker_central = false;
  bool ker_fixed_by_im = false;
};
Consequences consequences(const CrossedModule& x);

// Constructors throw precondition_failed naming the broken hypothesis.
CrossedModule make_normal_inclusion(const FiniteGroup& p, const std::vector<int>& subgroup, std::string name = "");
// P = Aut(M), mu(m) is conjugation x -> m^-1 x m, and alpha acts by evaluation.
CrossedModule make_inner_automorphism(const FiniteGroup& m, std::string name = "");
// action[m * |P| + p]; M abelian and P acting by automorphisms.
CrossedModule make_zero_module(const FiniteGroup& m, const FiniteGroup& p, std::vector<int> action,
                               std::string name = "");
// Surjective mu with central kernel; P acts through any lift.
CrossedModule make_central_epi(const FiniteGroup& m, const FiniteGroup& p, std::vector<int> mu,
                               std::string name = "");

enum class StandardKind { normal_inclusion, inner_automorphism, zero_module, central_epi };
struct StandardData {
  FiniteGroup M, P;
  std::vector<int> subgroup;  // normal_inclusion, elements of P
  std::vector<int> mu;        // central_epi
  std::vector<int> action;    // zero_module
};
CrossedModule make_standard(StandardKind kind, const StandardData& data, std::string name = "");

// Small crossed modules covering all four constructors.
std::vector<CrossedModule> crossed_module_catalogue();

// Text form: carriers as presentations, mu and the action on generators.
//   M: c | c^3
//   P: a, b | a^3, b^2, (a*b)^2
//   mu: c = a
//   act: b(c) = c^-1
// Unlisted mu images are 1 and unlisted actions fix the generator.
struct CrossedModuleSpec {
  std::string name;
  GroupPresentation M, P;
  std::vector<FreeWord> mu;                     // per M generator, word in P
  std::vector<std::vector<FreeWord>> action;    // [p generator][m generator], word in M

  bool operator==(const CrossedModuleSpec&) const = default;
};

CrossedModuleSpec parse_crossed_module(std::string_view text);
std::string to_text(const CrossedModuleSpec& spec);
// Enumerates both carriers; infinite_carrier when either fails within bound, and
// precondition_failed when mu or the action do not extend to the carriers.
CrossedModule realize(const CrossedModuleSpec& spec, std::size_t bound);

// Inline presentation "x, y | x^2, y^3".
GroupPresentation parse_inline_presentation(std::string_view text);
std::string to_inline_text(const GroupPresentation& p);

}  // namespace xkit
