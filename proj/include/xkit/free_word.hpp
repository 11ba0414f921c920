#pragma once

#include <compare>
#include <string>
#include <vector>

namespace xkit {

struct Letter {
  int gen = 0;
  int sign = 1;
  Letter inverse() const { return {gen, -sign}; }
  auto operator<=>(const Letter&) const = default;
};

// Stack-based cancellation of adjacent inverse pairs.
std::vector<Letter> free_reduce(std::vector<Letter> letters);

// Element of a free group; always stored freely reduced.
class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(std::vector<Letter> letters) : letters_(free_reduce(std::move(letters))) {}

  static FreeWord generator(int gen, int sign = 1) { return FreeWord({{gen, sign}}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  FreeWord inverse() const;
  FreeWord pow(int k) const;
  FreeWord operator*(const FreeWord& other) const;
  FreeWord& operator*=(const FreeWord& other) { return *this = *this * other; }
  // q^-1 w q
  FreeWord conjugate(const FreeWord& q) const { return q.inverse() * *this * q; }

  auto operator<=>(const FreeWord&) const = default;

 private:
  std::vector<Letter> letters_;
};

std::vector<Letter> invert_letters(const std::vector<Letter>& letters);

// Renders as x*y^-1*x; the identity renders as "1".
std::string to_string(const FreeWord& w, const std::vector<std::string>& names);
std::string letters_to_string(const std::vector<Letter>& letters, const std::vector<std::string>& names);

}  // namespace xkit
