#pragma once

#include <cstddef>
#include <vector>

#include "xkit/finite_group.hpp"
#include "xkit/free_word.hpp"
#include "xkit/presentation.hpp"

namespace xkit {

constexpr std::size_t kDefaultBound = 4096;
// XKIT_BOUND from the environment, else kDefaultBound.
std::size_t default_bound();

// A finitely presented group realized as a table, with normal-form words.
class EnumeratedGroup {
 public:
  EnumeratedGroup() = default;
  EnumeratedGroup(FiniteGroup group, std::vector<FreeWord> normal_forms, std::vector<int> generator_images)
      : group_(std::move(group)), normal_forms_(std::move(normal_forms)), gen_images_(std::move(generator_images)) {}

  const FiniteGroup& group() const { return group_; }
  int order() const { return group_.order(); }
  const FreeWord& normal_form(int element) const { return normal_forms_.at(element); }
  int generator_image(int gen) const { return gen_images_.at(gen); }
  const std::vector<int>& generator_images() const { return gen_images_; }
  int evaluate(const FreeWord& w) const { return evaluate(w.letters()); }
  int evaluate(const std::vector<Letter>& letters) const;

 private:
  FiniteGroup group_;
  std::vector<FreeWord> normal_forms_;
  std::vector<int> gen_images_;
};

// Bounded closure: builds the Cayley table by scan-and-fill over the relators.
// Throws unbounded when more than `bound` live elements are needed.
EnumeratedGroup enumerate_fp_group(const GroupPresentation& p, std::size_t bound);

}  // namespace xkit
