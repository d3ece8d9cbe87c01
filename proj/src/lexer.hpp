#pragma once

#include <deque>
#include <string>
#include <string_view>

#include "plonkalog/syntax.hpp"

namespace plonkalog {

// Shared tokenizer for formulas and declaration blocks. Identifier tokens are
// runs of [A-Za-z0-9_]; '#' comments run to end of line.
struct Token {
  enum Type { Ident, Punct, End };
  Type type = End;
  std::string text;
  size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  const Token& peek(size_t k = 0);
  Token next();
  bool at(std::string_view punct_or_ident);
  bool accept(std::string_view punct_or_ident);
  Token expect(std::string_view punct_or_ident, const std::string& what);
  Token expect_ident(const std::string& what);
  [[noreturn]] void fail(const std::string& msg, size_t pos) const;
  size_t here();

 private:
  Token lex();
  std::string_view text_;
  size_t i_ = 0;
  std::deque<Token> buf_;
};

// Parses one formula from the stream, stopping at any token that cannot
// extend it (',', '|-', '}', unbalanced ')', a non-infix identifier, ...).
Formula parse_formula_stream(Lexer& lx, const Signature& sig,
                             const Notation& nota);

}  // namespace plonkalog
