#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xkit/checked.hpp"
#include "xkit/finite_group.hpp"
#include "xkit/free_word.hpp"

namespace xkit {

// Formal integer combination of group elements. Key is int for table groups and
// FreeWord for free groups; the two never mix.
template <class Key>
class GroupRingElement {
 public:
  GroupRingElement() = default;
  static GroupRingElement unit(const Key& g, std::int64_t coef = 1) {
    GroupRingElement r;
    r.add_term(g, coef);
    return r;
  }

  void add_term(const Key& g, std::int64_t coef) {
    if (coef == 0) return;
    auto [it, fresh] = terms_.try_emplace(g, coef);
    if (!fresh) {
      it->second = checked_add(it->second, coef);
      if (it->second == 0) terms_.erase(it);
    }
  }

  const std::map<Key, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t coefficient(const Key& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? 0 : it->second;
  }
  std::int64_t augmentation() const {
    std::int64_t s = 0;
    for (const auto& [g, c] : terms_) s = checked_add(s, c);
    return s;
  }

  GroupRingElement operator-() const {
    GroupRingElement r;
    for (const auto& [g, c] : terms_) r.terms_.emplace(g, checked_sub(0, c));
    return r;
  }
  GroupRingElement& operator+=(const GroupRingElement& o) {
    for (const auto& [g, c] : o.terms_) add_term(g, c);
    return *this;
  }
  GroupRingElement& operator-=(const GroupRingElement& o) { return *this += -o; }
  GroupRingElement operator+(const GroupRingElement& o) const { return GroupRingElement(*this) += o; }
  GroupRingElement operator-(const GroupRingElement& o) const { return GroupRingElement(*this) -= o; }
  GroupRingElement scaled(std::int64_t k) const {
    GroupRingElement r;
    for (const auto& [g, c] : terms_) r.add_term(g, checked_mul(c, k));
    return r;
  }

  bool operator==(const GroupRingElement&) const = default;
  bool operator<(const GroupRingElement& o) const { return terms_ < o.terms_; }

 private:
  std::map<Key, std::int64_t> terms_;
};

using ZG = GroupRingElement<int>;
using ZF = GroupRingElement<FreeWord>;

enum class RingOp { add, mul };

ZG multiply(const ZG& a, const ZG& b, const FiniteGroup& g);
ZF multiply(const ZF& a, const ZF& b);
ZG group_ring_op(const ZG& a, const ZG& b, RingOp kind, const FiniteGroup& g);
// a * h for a group element h
ZG right_translate(const ZG& a, int h, const FiniteGroup& g);
// Pushes a free-group ring element forward along generator images.
ZG push_forward(const ZF& a, const std::vector<int>& generator_images, const FiniteGroup& g);

// "1 + x - 2*x^2" with element names from `labels`.
std::string to_string(const ZG& a, const std::vector<std::string>& labels);
std::string to_string(const ZF& a, const std::vector<std::string>& generator_names);

}  // namespace xkit
