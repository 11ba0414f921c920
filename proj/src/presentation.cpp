#include "xkit/presentation.hpp"

#include <algorithm>

#include "xkit/error.hpp"

namespace xkit {

int GroupPresentation::generator_index(const std::string& name) const {
  auto it = std::find(generators.begin(), generators.end(), name);
  return it == generators.end() ? -1 : static_cast<int>(it - generators.begin());
}

FreeWord GroupPresentation::word(const SymWord& w) const {
  std::vector<Letter> letters;
  for (const auto& l : w) {
    int g = generator_index(l.name);
    if (g < 0) fail(Errc::parse, "unknown generator '" + l.name + "'");
    letters.push_back({g, l.sign});
  }
  return FreeWord(std::move(letters));
}

GroupPresentation parse_presentation(std::string_view text) {
  GroupPresentation p;
  std::vector<std::string> rel_texts;
  bool seen_gens = false;
  for (const auto& [key, value] : parse_fields(text)) {
    if (key == "gens") {
      seen_gens = true;
      for (const auto& g : split_top(value, ',')) {
        if (!is_name(g)) fail(Errc::parse, "bad generator name '" + g + "'");
        if (p.generator_index(g) >= 0) fail(Errc::parse, "duplicate generator '" + g + "'");
        p.generators.push_back(g);
      }
    } else if (key == "rels") {
      for (const auto& r : split_top(value, ',')) rel_texts.push_back(r);
    } else {
      fail(Errc::parse, "unknown presentation field '" + key + "'");
    }
  }
  if (!seen_gens) fail(Errc::parse, "presentation needs a 'gens:' field");
  for (const auto& r : rel_texts) {
    auto sides = split_top(r, '=');
    if (sides.size() == 1) {
      p.relators.push_back(p.word(sides[0]));
    } else if (sides.size() == 2) {
      p.relators.push_back(p.word(sides[0]) * p.word(sides[1]).inverse());
    } else {
      fail(Errc::parse, "bad relation '" + r + "'");
    }
  }
  return p;
}

std::string to_text(const GroupPresentation& p) {
  std::string out = "gens: ";
  for (std::size_t i = 0; i < p.generators.size(); ++i) out += (i ? "," : "") + p.generators[i];
  out += "; rels: ";
  for (std::size_t i = 0; i < p.relators.size(); ++i) out += (i ? ", " : "") + p.render(p.relators[i]);
  return out;
}

}  // namespace xkit
