#include "xkit/free_word.hpp"

#include <algorithm>

namespace xkit {

std::vector<Letter> free_reduce(std::vector<Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (const Letter& l : letters) {
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

std::vector<Letter> invert_letters(const std::vector<Letter>& letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.push_back(it->inverse());
  return out;
}

FreeWord FreeWord::inverse() const {
  FreeWord w;
  w.letters_ = invert_letters(letters_);
  return w;
}

FreeWord FreeWord::pow(int k) const {
  FreeWord base = k < 0 ? inverse() : *this;
  FreeWord out;
  for (int i = 0; i < std::abs(k); ++i) out *= base;
  return out;
}

FreeWord FreeWord::operator*(const FreeWord& other) const {
  std::vector<Letter> cat = letters_;
  cat.insert(cat.end(), other.letters_.begin(), other.letters_.end());
  return FreeWord(std::move(cat));
}

std::string letters_to_string(const std::vector<Letter>& letters, const std::vector<std::string>& names) {
  if (letters.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < letters.size()) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    int run = static_cast<int>(j - i) * letters[i].sign;
    if (!out.empty()) out += '*';
    out += names.at(letters[i].gen);
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

std::string to_string(const FreeWord& w, const std::vector<std::string>& names) {
  return letters_to_string(w.letters(), names);
}

}  // namespace xkit
