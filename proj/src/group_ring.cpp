#include "xkit/group_ring.hpp"

namespace xkit {

ZG multiply(const ZG& a, const ZG& b, const FiniteGroup& g) {
  ZG r;
  for (const auto& [x, c] : a.terms())
    for (const auto& [y, d] : b.terms()) r.add_term(g.mul(x, y), checked_mul(c, d));
  return r;
}

ZF multiply(const ZF& a, const ZF& b) {
  ZF r;
  for (const auto& [x, c] : a.terms())
    for (const auto& [y, d] : b.terms()) r.add_term(x * y, checked_mul(c, d));
  return r;
}

ZG group_ring_op(const ZG& a, const ZG& b, RingOp kind, const FiniteGroup& g) {
  return kind == RingOp::add ? a + b : multiply(a, b, g);
}

ZG right_translate(const ZG& a, int h, const FiniteGroup& g) {
  ZG r;
  for (const auto& [x, c] : a.terms()) r.add_term(g.mul(x, h), c);
  return r;
}

ZG push_forward(const ZF& a, const std::vector<int>& generator_images, const FiniteGroup& g) {
  ZG r;
  for (const auto& [w, c] : a.terms()) {
    int e = 0;
    for (const Letter& l : w.letters()) {
      int x = generator_images.at(l.gen);
      e = g.mul(e, l.sign > 0 ? x : g.inv(x));
    }
    r.add_term(e, c);
  }
  return r;
}

namespace {

template <class Map, class Name>
std::string render_terms(const Map& terms, Name name) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms) {
    std::string n = name(k);
    std::int64_t mag = c < 0 ? -c : c;
    if (first) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    first = false;
    if (n == "1") out += std::to_string(mag);
    else if (mag == 1) out += n;
    else out += std::to_string(mag) + "*" + n;
  }
  return out;
}

}  // namespace

std::string to_string(const ZG& a, const std::vector<std::string>& labels) {
  return render_terms(a.terms(), [&](int k) { return k == 0 ? std::string("1") : labels.at(k); });
}

std::string to_string(const ZF& a, const std::vector<std::string>& generator_names) {
  return render_terms(a.terms(), [&](const FreeWord& w) { return to_string(w, generator_names); });
}

}  // namespace xkit
