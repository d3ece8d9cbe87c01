#include <cctype>

#include "lexer.hpp"

namespace plonkalog {

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

const char* const kMultiPunct[] = {"/\\", "\\/", "->", "|-"};
const char kSinglePunct[] = "(){}[],;:.=~-/";

}  // namespace

Token Lexer::lex() {
  while (i_ < text_.size()) {
    char c = text_[i_];
    if (c == '#') {
      while (i_ < text_.size() && text_[i_] != '\n') ++i_;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i_;
      continue;
    }
    break;
  }
  if (i_ >= text_.size()) return Token{Token::End, "", i_};
  size_t start = i_;
  char c = text_[i_];
  if (ident_char(c)) {
    size_t j = i_;
    while (j < text_.size() && ident_char(text_[j])) ++j;
    Token t{Token::Ident, std::string(text_.substr(i_, j - i_)), start};
    i_ = j;
    return t;
  }
  for (const char* mp : kMultiPunct) {
    std::string_view m(mp);
    if (text_.substr(i_, m.size()) == m) {
      i_ += m.size();
      return Token{Token::Punct, std::string(m), start};
    }
  }
  for (char sp : kSinglePunct) {
    if (c == sp) {
      ++i_;
      return Token{Token::Punct, std::string(1, c), start};
    }
  }
  fail(std::string("unexpected character '") + c + "'", start);
}

const Token& Lexer::peek(size_t k) {
  while (buf_.size() <= k) buf_.push_back(lex());
  return buf_[k];
}

Token Lexer::next() {
  peek(0);
  Token t = buf_.front();
  buf_.pop_front();
  return t;
}

bool Lexer::at(std::string_view s) {
  const Token& t = peek();
  return t.type != Token::End && t.text == s;
}

bool Lexer::accept(std::string_view s) {
  if (!at(s)) return false;
  next();
  return true;
}

Token Lexer::expect(std::string_view s, const std::string& what) {
  const Token& t = peek();
  if (t.type == Token::End || t.text != s)
    fail("expected '" + std::string(s) + "' " + what +
             (t.type == Token::End ? " but found end of input"
                                   : " but found '" + t.text + "'"),
         t.pos);
  return next();
}

Token Lexer::expect_ident(const std::string& what) {
  const Token& t = peek();
  if (t.type != Token::Ident)
    fail("expected " + what +
             (t.type == Token::End ? " but found end of input"
                                   : " but found '" + t.text + "'"),
         t.pos);
  return next();
}

void Lexer::fail(const std::string& msg, size_t pos) const {
  throw ParseError(msg + " (at offset " + std::to_string(pos) + ")", pos);
}

size_t Lexer::here() { return peek().pos; }

namespace {

class FormulaParser {
 public:
  FormulaParser(Lexer& lx, const Signature& sig, const Notation& nota)
      : lx_(lx), sig_(sig), nota_(nota) {}

  Formula parse() { return parse_binary(0); }

 private:
  Formula parse_binary(int min_prec) {
    Formula lhs = parse_unary();
    while (true) {
      const Token& t = lx_.peek();
      if (t.type == Token::End) break;
      const Notation::Infix* op = t.type == Token::Punct
                                      ? nota_.by_token(t.text)
                                      : nota_.by_word(t.text);
      if (!op || op->prec < min_prec) break;
      const std::string op_text = t.text;
      const size_t op_pos = t.pos;
      const Signature::Symbol* sym = sig_.find(op->symbol);
      if (!sym || sym->arity != 2)
        lx_.fail("operator '" + op_text + "' has no binary symbol '" +
                     op->symbol + "' in this signature",
                 op_pos);
      lx_.next();
      Formula rhs = parse_binary(op->right_assoc ? op->prec : op->prec + 1);
      lhs = Formula::app(op->symbol, {std::move(lhs), std::move(rhs)});
      const Token& nx = lx_.peek();
      if (nx.type != Token::End) {
        const Notation::Infix* op2 = nx.type == Token::Punct
                                         ? nota_.by_token(nx.text)
                                         : nota_.by_word(nx.text);
        if (op2 && op2->prec == op->prec && !op->right_assoc)
          lx_.fail("ambiguous chain of '" + op_text + "' and '" + nx.text +
                       "'; parenthesize",
                   nx.pos);
      }
    }
    return lhs;
  }

  Formula parse_unary() {
    const Token& t = lx_.peek();
    if (t.type == Token::Ident) {
      std::string name = t.text;
      auto alias = nota_.aliases.find(name);
      if (alias != nota_.aliases.end()) name = alias->second;
      const Signature::Symbol* sym = sig_.find(name);
      if (sym && sym->arity == 1 && !(lx_.peek(1).type == Token::Punct &&
                                      lx_.peek(1).text == "(")) {
        lx_.next();
        Formula arg = parse_unary();
        return Formula::app(name, {std::move(arg)});
      }
    }
    return parse_primary();
  }

  Formula parse_primary() {
    Token t = lx_.peek();
    if (t.type == Token::Punct && t.text == "(") {
      lx_.next();
      Formula f = parse_binary(0);
      lx_.expect(")", "to close parenthesis");
      return f;
    }
    if (t.type != Token::Ident)
      lx_.fail(t.type == Token::End
                   ? "unexpected end of formula"
                   : "unexpected token '" + t.text + "' in formula",
               t.pos);
    lx_.next();
    std::string name = t.text;
    auto alias = nota_.aliases.find(name);
    if (alias != nota_.aliases.end()) name = alias->second;
    const Signature::Symbol* sym = sig_.find(name);
    if (sym) {
      lx_.expect("(", "after symbol '" + name + "'");
      std::vector<Formula> args;
      if (!lx_.at(")")) {
        args.push_back(parse_binary(0));
        while (lx_.accept(",")) args.push_back(parse_binary(0));
      }
      lx_.expect(")", "to close argument list");
      if (static_cast<int>(args.size()) != sym->arity)
        lx_.fail("symbol '" + name + "' expects " +
                     std::to_string(sym->arity) + " argument(s), got " +
                     std::to_string(args.size()),
                 t.pos);
      return Formula::app(name, std::move(args));
    }
    if (valid_variable_name(t.text)) return Formula::var(t.text);
    lx_.fail("unknown symbol '" + t.text + "'", t.pos);
  }

  Lexer& lx_;
  const Signature& sig_;
  const Notation& nota_;
};

}  // namespace

Formula parse_formula_stream(Lexer& lx, const Signature& sig,
                             const Notation& nota) {
  return FormulaParser(lx, sig, nota).parse();
}

Formula parse_formula(std::string_view text, const Signature& sig,
                      const Notation& nota) {
  Lexer lx(text);
  Formula f = parse_formula_stream(lx, sig, nota);
  const Token& t = lx.peek();
  if (t.type != Token::End)
    lx.fail("trailing input '" + t.text + "' after formula", t.pos);
  return f;
}

}  // namespace plonkalog
