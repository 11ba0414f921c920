#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// The one grammar every text format in the library goes through.
//
//   word    := factor ('*' factor)*
//   factor  := atom ('^' int)?
//   atom    := name | '1' | '(' word ')'
//   ring    := ['-'] rterm (('+'|'-') rterm)*      rterm := int ['*' word] | word
//   chain   := ['-'] cterm (('+'|'-') cterm)* | '0' cterm := [int '*'] name ['^' (name | '(' word ')')]
//
// Names are runs of [A-Za-z0-9_.~'] that are not all digits.

namespace xkit {

struct SymLetter {
  std::string name;
  int sign = 1;
  bool operator==(const SymLetter&) const = default;
};
using SymWord = std::vector<SymLetter>;

struct SymTerm {
  std::int64_t coef = 1;
  SymWord word;
};

struct SymChainTerm {
  std::int64_t coef = 1;
  std::string gen;
  SymWord act;
};

SymWord parse_word(std::string_view text);
std::vector<SymTerm> parse_ring_literal(std::string_view text);
std::vector<SymChainTerm> parse_chain(std::string_view text);

bool is_name(std::string_view text);
std::string trim(std::string_view text);
// Splits on sep outside parentheses; empty pieces are dropped.
std::vector<std::string> split_top(std::string_view text, char sep);
// Splits "key: value" fields separated by ';' or newlines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> parse_fields(std::string_view text);

std::string render_sym_word(const SymWord& w);

}  // namespace xkit
