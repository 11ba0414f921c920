#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "xkit/enumerate.hpp"
#include "xkit/free_word.hpp"
#include "xkit/group_ring.hpp"
#include "xkit/presentation.hpp"

namespace xkit {

// (r, sign, p) stands for (r,p)^sign in C(omega).
struct FcmTriple {
  int relator = 0;
  int sign = 1;
  FreeWord conjugator;

  bool operator==(const FcmTriple&) const = default;
  auto operator<=>(const FcmTriple&) const = default;
};

struct FcmElement {
  std::vector<FcmTriple> triples;

  bool operator==(const FcmElement&) const = default;
  auto operator<=>(const FcmElement&) const = default;
};

FcmElement operator*(const FcmElement& a, const FcmElement& b);
FcmElement inverse(const FcmElement& e);
// (r,p)^q = (r,pq)
FcmElement action_on_fcm(const FcmElement& e, const FreeWord& q);
FreeWord fcm_boundary(const FcmElement& e, const std::vector<FreeWord>& omega);

// Peiffer swap: (s,q)(r,p) equals (r,p)(s, q * boundary(r,p)).
FcmElement peiffer_swap(const FcmTriple& first, const FcmTriple& second, const std::vector<FreeWord>& omega);

// C(omega) -> F(X) for a presentation whose quotient group is enumerated once.
class FreeCrossedModule {
 public:
  FreeCrossedModule(GroupPresentation p, std::size_t bound);

  const GroupPresentation& presentation() const { return presentation_; }
  const EnumeratedGroup& quotient() const { return quotient_; }
  int relator_count() const { return static_cast<int>(presentation_.relators.size()); }

  FreeWord boundary(const FcmElement& e) const { return fcm_boundary(e, presentation_.relators); }
  // Abelianisation into the free Z[G]-module on the relators: (r,e,p) -> e r phi(p).
  std::vector<ZG> h2(const FcmElement& e) const;
  bool equal(const FcmElement& a, const FcmElement& b) const;

  // Chain syntax over relator names r1..rk, e.g. "r1 - r1^x".
  FcmElement parse(std::string_view text) const;
  std::string render(const FcmElement& e) const;

 private:
  GroupPresentation presentation_;
  EnumeratedGroup quotient_;
};

bool fcm_equal(const FcmElement& a, const FcmElement& b, const GroupPresentation& p, std::size_t bound);

}  // namespace xkit
