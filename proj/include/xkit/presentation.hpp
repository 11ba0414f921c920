#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "xkit/free_word.hpp"
#include "xkit/parse.hpp"

namespace xkit {

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<FreeWord> relators;

  int generator_index(const std::string& name) const;  // -1 when absent
  FreeWord word(const SymWord& w) const;                 // throws parse on unknown names
  FreeWord word(std::string_view text) const { return word(parse_word(text)); }
  std::string render(const FreeWord& w) const { return to_string(w, generators); }
  bool operator==(const GroupPresentation&) const = default;
};

// "gens: x,y; rels: x^2, (x*y)^3"
GroupPresentation parse_presentation(std::string_view text);
std::string to_text(const GroupPresentation& p);

}  // namespace xkit
