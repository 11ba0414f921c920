#include "xkit/parse.hpp"

#include <cctype>

#include "xkit/error.hpp"

namespace xkit {
namespace {

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '~' || c == '\'';
}

enum class Tok { name, integer, symbol, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }
  bool accept(char c) {
    if (cur_.kind == Tok::symbol && cur_.text[0] == c) {
      advance();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }
  bool at_symbol(char c) const { return cur_.kind == Tok::symbol && cur_.text[0] == c; }
  bool done() const { return cur_.kind == Tok::end; }

  [[noreturn]] void error(const std::string& msg) const {
    fail(Errc::parse, msg + " at offset " + std::to_string(pos_) + " in '" + std::string(src_) + "'");
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ >= src_.size()) {
      cur_ = {Tok::end, ""};
      return;
    }
    char c = src_[pos_];
    if (name_char(c)) {
      std::size_t start = pos_;
      bool digits = true;
      while (pos_ < src_.size() && name_char(src_[pos_])) {
        if (!std::isdigit(static_cast<unsigned char>(src_[pos_]))) digits = false;
        ++pos_;
      }
      cur_ = {digits ? Tok::integer : Tok::name, std::string(src_.substr(start, pos_ - start))};
      return;
    }
    if (std::string_view("*^()+-=,").find(c) == std::string_view::npos)
      fail(Errc::parse, std::string("unexpected character '") + c + "' in '" + std::string(src_) + "'");
    ++pos_;
    cur_ = {Tok::symbol, std::string(1, c)};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token cur_;
};

std::int64_t to_int(const Lexer& lx, const std::string& digits) {
  try {
    return std::stoll(digits);
  } catch (const std::exception&) {
    lx.error("integer out of range");
  }
}

std::int64_t parse_signed_int(Lexer& lx) {
  bool neg = lx.accept('-');
  if (!neg) lx.accept('+');
  if (lx.peek().kind != Tok::integer) lx.error("expected integer");
  std::int64_t v = to_int(lx, lx.take().text);
  return neg ? -v : v;
}

SymWord invert(const SymWord& w) {
  SymWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->name, -it->sign});
  return out;
}

SymWord parse_word_expr(Lexer& lx);

SymWord parse_atom(Lexer& lx) {
  if (lx.accept('(')) {
    SymWord w = parse_word_expr(lx);
    lx.expect(')');
    return w;
  }
  const Token& t = lx.peek();
  if (t.kind == Tok::name) return {{lx.take().text, 1}};
  if (t.kind == Tok::integer && t.text == "1") {
    lx.take();
    return {};
  }
  lx.error("expected generator, '1' or '('");
}

SymWord parse_factor(Lexer& lx) {
  SymWord base = parse_atom(lx);
  if (!lx.accept('^')) return base;
  std::int64_t k = parse_signed_int(lx);
  if (k > 100000 || k < -100000) lx.error("exponent too large");
  SymWord unit = k < 0 ? invert(base) : base;
  SymWord out;
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out.insert(out.end(), unit.begin(), unit.end());
  return out;
}

SymWord parse_word_expr(Lexer& lx) {
  SymWord w = parse_factor(lx);
  while (lx.accept('*')) {
    SymWord f = parse_factor(lx);
    w.insert(w.end(), f.begin(), f.end());
  }
  return w;
}

}  // namespace

SymWord parse_word(std::string_view text) {
  Lexer lx(text);
  SymWord w = parse_word_expr(lx);
  if (!lx.done()) lx.error("trailing input");
  return w;
}

std::vector<SymTerm> parse_ring_literal(std::string_view text) {
  Lexer lx(text);
  std::vector<SymTerm> out;
  int sign = 1;
  if (lx.accept('-')) sign = -1;
  else lx.accept('+');
  for (;;) {
    SymTerm term;
    if (lx.peek().kind == Tok::integer) {
      std::string digits = lx.take().text;
      term.coef = to_int(lx, digits);
      if (lx.accept('*')) term.word = parse_word_expr(lx);
      else if (lx.accept('^')) {
        // "1^k" is still the identity
        parse_signed_int(lx);
      }
    } else {
      term.word = parse_word_expr(lx);
    }
    term.coef *= sign;
    out.push_back(std::move(term));
    if (lx.accept('+')) sign = 1;
    else if (lx.accept('-')) sign = -1;
    else break;
  }
  if (!lx.done()) lx.error("trailing input");
  return out;
}

std::vector<SymChainTerm> parse_chain(std::string_view text) {
  Lexer lx(text);
  std::vector<SymChainTerm> out;
  if (lx.peek().kind == Tok::integer && lx.peek().text == "0") {
    lx.take();
    if (!lx.done()) lx.error("trailing input");
    return out;
  }
  int sign = 1;
  if (lx.accept('-')) sign = -1;
  else lx.accept('+');
  for (;;) {
    SymChainTerm term;
    if (lx.peek().kind == Tok::integer) {
      term.coef = to_int(lx, lx.take().text);
      lx.expect('*');
    }
    if (lx.peek().kind != Tok::name) lx.error("expected generator name");
    term.gen = lx.take().text;
    if (lx.accept('^')) {
      if (lx.accept('(')) {
        term.act = parse_word_expr(lx);
        lx.expect(')');
      } else if (lx.peek().kind == Tok::name) {
        term.act = {{lx.take().text, 1}};
      } else {
        lx.error("expected acting path after '^'");
      }
    }
    term.coef *= sign;
    out.push_back(std::move(term));
    if (lx.accept('+')) sign = 1;
    else if (lx.accept('-')) sign = -1;
    else break;
  }
  if (!lx.done()) lx.error("trailing input");
  return out;
}

bool is_name(std::string_view text) {
  if (text.empty()) return false;
  bool digits = true;
  for (char c : text) {
    if (!name_char(c)) return false;
    if (!std::isdigit(static_cast<unsigned char>(c))) digits = false;
  }
  return !digits;
}

std::string trim(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

std::vector<std::string> split_top(std::string_view text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      if (auto t = trim(cur); !t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (auto t = trim(cur); !t.empty()) out.push_back(t);
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_fields(std::string_view text) {
  std::string cleaned;
  bool comment = false;
  for (char c : text) {
    if (c == '#') comment = true;
    if (c == '\n') {
      comment = false;
      cleaned += ';';
      continue;
    }
    if (!comment) cleaned += c;
  }
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& piece : split_top(cleaned, ';')) {
    auto colon = piece.find(':');
    if (colon == std::string::npos) fail(Errc::parse, "field without ':' in '" + piece + "'");
    out.emplace_back(trim(piece.substr(0, colon)), trim(piece.substr(colon + 1)));
  }
  return out;
}

std::string render_sym_word(const SymWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += '*';
    out += l.name;
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

}  // namespace xkit
