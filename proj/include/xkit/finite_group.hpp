#pragma once

#include <optional>
#include <string>
#include <vector>

namespace xkit {

// Group by dense multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(1, {0}) {}
  // Throws precondition_failed unless table is a group table with identity 0.
  FiniteGroup(int order, std::vector<int> table, std::vector<std::string> labels = {});

  int order() const { return order_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  int conj(int a, int by) const { return mul(inv(by), mul(a, by)); }  // by^-1 a by
  int pow(int a, long k) const;
  int element_order(int a) const;
  bool is_abelian() const;
  const std::string& label(int a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& table() const { return table_; }

  bool operator==(const FiniteGroup& o) const { return order_ == o.order_ && table_ == o.table_; }

  static FiniteGroup cyclic(int n);
  static FiniteGroup dihedral(int n);  // order 2n
  static FiniteGroup symmetric(int n);
  static FiniteGroup alternating(int n);
  static FiniteGroup quaternion();
  static FiniteGroup klein_four();
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
  // Closure of permutations of {0..degree-1}; product p*q applies p first.
  static FiniteGroup from_permutations(int degree, const std::vector<std::vector<int>>& gens,
                                       std::vector<std::vector<int>>* elements = nullptr);

 private:
  int order_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
};

// Exhaustive axiom check, including associativity over all triples.
bool satisfies_group_axioms(const FiniteGroup& g);

// Subgroup generated by gens, as a sorted element list starting with 0.
std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens);
// Table for the subgroup on the given elements; elements[i] becomes index i.
FiniteGroup subgroup_table(const FiniteGroup& g, const std::vector<int>& elements);
bool is_normal_subgroup(const FiniteGroup& g, const std::vector<int>& elements);
// Greedy small generating set.
std::vector<int> generating_set(const FiniteGroup& g);

std::vector<int> element_order_profile(const FiniteGroup& g);  // sorted
bool is_homomorphism(const FiniteGroup& src, const FiniteGroup& dst, const std::vector<int>& map);
std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b);

// Aut(g) as a group; automorphisms[i] is the image table of element i of the result.
// Composition applies the left factor first, so m -> alpha(m) is a right action.
FiniteGroup automorphism_group(const FiniteGroup& g, std::vector<std::vector<int>>* automorphisms);

}  // namespace xkit
