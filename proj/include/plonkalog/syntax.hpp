#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace plonkalog {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  size_t pos;
  ParseError(const std::string& msg, size_t at) : Error(msg), pos(at) {}
};

/// Constant-free signature: every symbol has arity >= 1.
struct Signature {
  struct Symbol {
    std::string name;
    int arity = 0;
    bool operator==(const Symbol&) const = default;
  };

  std::vector<Symbol> symbols;  // declaration order is significant

  static Signature make(std::vector<Symbol> syms);

  const Symbol* find(std::string_view name) const;
  int arity(std::string_view name) const;  // throws on unknown symbol
  bool operator==(const Signature&) const = default;
};

bool valid_variable_name(std::string_view s);
bool valid_symbol_name(std::string_view s);

/// Immutable term tree. Variables have depth 0.
class Formula {
 public:
  static Formula var(std::string name);
  static Formula app(std::string symbol, std::vector<Formula> args);

  bool is_var() const { return node_->is_var; }
  const std::string& head() const { return node_->head; }
  const std::vector<Formula>& args() const { return node_->args; }
  int depth() const { return node_->depth; }
  size_t hash() const { return node_->hash; }
  const void* id() const { return node_.get(); }  // stable node identity

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  struct Node {
    bool is_var;
    std::string head;
    std::vector<Formula> args;
    int depth;
    size_t hash;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  friend int compare(const Formula& a, const Formula& b);
};

/// Total structural order: variables first (by name), then applications by
/// head, arity, then arguments left to right.
int compare(const Formula& a, const Formula& b);

struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const {
    return compare(a, b) < 0;
  }
};

using FormulaSet = std::set<Formula, FormulaLess>;
using Substitution = std::map<std::string, Formula>;

std::set<std::string> vars_of(const Formula& f);
std::set<std::string> vars_of(const std::vector<Formula>& fs);

/// Checks arity agreement against sig; reports the first offence in *why.
bool well_formed(const Formula& f, const Signature& sig,
                 std::string* why = nullptr);

Formula substitute(const Formula& f, const Substitution& s);

/// One-sided first-order matching; repeated pattern variables require equal
/// subterms. Returns the unique most general matcher over vars_of(pattern).
std::optional<Substitution> match(const Formula& pattern,
                                  const Formula& target);
bool match_into(const Formula& pattern, const Formula& target,
                Substitution& binding);

/// Tree positions as child-index paths; root is the empty path.
std::vector<std::vector<int>> positions_of(const Formula& f);
const Formula& subformula_at(const Formula& f, const std::vector<int>& path);
Formula replace_at(const Formula& f, const std::vector<int>& path,
                   const Formula& replacement);
void collect_subformulas(const Formula& f, FormulaSet& out);

/// Sorted, duplicate-free premise collection.
std::vector<Formula> normalize_set(std::vector<Formula> fs);
bool set_contains(const std::vector<Formula>& sorted_set, const Formula& f);

struct Sequent {
  std::vector<Formula> premises;  // normalized
  Formula conclusion;
};

/// Concrete syntax: infix tokens for binary symbols plus input aliases.
/// Unary symbols always parse as prefix words; any symbol accepts the
/// sym(t1,...,tn) form.
struct Notation {
  struct Infix {
    std::string token;
    std::string symbol;
    int prec = 0;
    bool right_assoc = false;
    std::string word;  // optional word form, e.g. "and"
  };
  std::vector<Infix> infix;
  std::map<std::string, std::string> aliases;

  static const Notation& standard();  // "/\"->and, "\/"->or, "->"->to, neg->not
  const Infix* by_token(std::string_view tok) const;
  const Infix* by_symbol(std::string_view sym) const;
  const Infix* by_word(std::string_view w) const;
};

Formula parse_formula(std::string_view text, const Signature& sig,
                      const Notation& nota = Notation::standard());
std::string print_formula(const Formula& f,
                          const Notation& nota = Notation::standard());
std::string print_formula_list(const std::vector<Formula>& fs,
                               const Notation& nota = Notation::standard());

/// First name not in `avoid`, drawn from `preferred` then preferred[0]+digits.
std::string fresh_var(const std::set<std::string>& avoid,
                      const std::vector<std::string>& preferred);

}  // namespace plonkalog
