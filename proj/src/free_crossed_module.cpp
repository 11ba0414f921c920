#include "xkit/free_crossed_module.hpp"

#include <algorithm>

#include "xkit/error.hpp"
#include "xkit/parse.hpp"

namespace xkit {

FcmElement operator*(const FcmElement& a, const FcmElement& b) {
  FcmElement out = a;
  out.triples.insert(out.triples.end(), b.triples.begin(), b.triples.end());
  return out;
}

FcmElement inverse(const FcmElement& e) {
  FcmElement out;
  for (auto it = e.triples.rbegin(); it != e.triples.rend(); ++it) out.triples.push_back({it->relator, -it->sign, it->conjugator});
  return out;
}

FcmElement action_on_fcm(const FcmElement& e, const FreeWord& q) {
  FcmElement out = e;
  for (auto& t : out.triples) t.conjugator = t.conjugator * q;
  return out;
}

FreeWord fcm_boundary(const FcmElement& e, const std::vector<FreeWord>& omega) {
  FreeWord out;
  for (const auto& t : e.triples) {
    if (t.relator < 0 || t.relator >= static_cast<int>(omega.size()))
      fail(Errc::precondition_failed, "relator index out of range");
    out = out * omega[t.relator].pow(t.sign).conjugate(t.conjugator);
  }
  return out;
}

FcmElement peiffer_swap(const FcmTriple& first, const FcmTriple& second, const std::vector<FreeWord>& omega) {
  FcmTriple moved = first;
  moved.conjugator = first.conjugator * fcm_boundary(FcmElement{{second}}, omega);
  return FcmElement{{second, moved}};
}

FreeCrossedModule::FreeCrossedModule(GroupPresentation p, std::size_t bound)
    : presentation_(std::move(p)), quotient_(enumerate_fp_group(presentation_, bound)) {}

std::vector<ZG> FreeCrossedModule::h2(const FcmElement& e) const {
  std::vector<ZG> out(presentation_.relators.size());
  for (const auto& t : e.triples) {
    if (t.relator < 0 || t.relator >= relator_count()) fail(Errc::precondition_failed, "relator index out of range");
    out[t.relator].add_term(quotient_.evaluate(t.conjugator), t.sign);
  }
  return out;
}

bool FreeCrossedModule::equal(const FcmElement& a, const FcmElement& b) const {
  return boundary(a) == boundary(b) && h2(a) == h2(b);
}

FcmElement FreeCrossedModule::parse(std::string_view text) const {
  FcmElement out;
  for (const auto& term : parse_chain(text)) {
    if (term.gen.size() < 2 || term.gen[0] != 'r')
      fail(Errc::parse, "relators are named r1..r" + std::to_string(relator_count()) + ", got '" + term.gen + "'");
    int r = 0;
    try {
      r = std::stoi(term.gen.substr(1)) - 1;
    } catch (const std::exception&) {
      fail(Errc::parse, "bad relator name '" + term.gen + "'");
    }
    if (r < 0 || r >= relator_count()) fail(Errc::parse, "no relator " + term.gen);
    FreeWord q = presentation_.word(term.act);
    int sign = term.coef < 0 ? -1 : 1;
    for (std::int64_t k = 0; k < (term.coef < 0 ? -term.coef : term.coef); ++k) out.triples.push_back({r, sign, q});
  }
  return out;
}

std::string FreeCrossedModule::render(const FcmElement& e) const {
  if (e.triples.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < e.triples.size(); ++i) {
    const auto& t = e.triples[i];
    out += t.sign < 0 ? (i ? " - " : "-") : (i ? " + " : "");
    out += "r" + std::to_string(t.relator + 1);
    if (!t.conjugator.is_identity()) {
      std::string q = presentation_.render(t.conjugator);
      bool simple = q.find_first_of("*^") == std::string::npos;
      out += simple ? "^" + q : "^(" + q + ")";
    }
  }
  return out;
}

bool fcm_equal(const FcmElement& a, const FcmElement& b, const GroupPresentation& p, std::size_t bound) {
  if (fcm_boundary(a, p.relators) != fcm_boundary(b, p.relators)) return false;
  return FreeCrossedModule(p, bound).equal(a, b);
}

}  // namespace xkit
