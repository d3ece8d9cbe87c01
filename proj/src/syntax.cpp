#include "plonkalog/syntax.hpp"

#include <algorithm>
#include <cctype>

namespace plonkalog {

bool valid_variable_name(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

bool valid_symbol_name(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

Signature Signature::make(std::vector<Symbol> syms) {
  Signature sig;
  for (const auto& s : syms) {
    if (!valid_symbol_name(s.name))
      throw Error("invalid symbol name '" + s.name + "'");
    if (s.arity < 1)
      throw Error("symbol '" + s.name + "' has arity " +
                  std::to_string(s.arity) + "; constants are not allowed");
    if (sig.find(s.name))
      throw Error("duplicate symbol '" + s.name + "'");
    sig.symbols.push_back(s);
  }
  return sig;
}

const Signature::Symbol* Signature::find(std::string_view name) const {
  for (const auto& s : symbols)
    if (s.name == name) return &s;
  return nullptr;
}

int Signature::arity(std::string_view name) const {
  const Symbol* s = find(name);
  if (!s) throw Error("unknown symbol '" + std::string(name) + "'");
  return s->arity;
}

namespace {

size_t combine_hash(size_t seed, size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->head = std::move(name);
  n->depth = 0;
  n->hash = combine_hash(std::hash<std::string>{}(n->head), 1);
  return Formula(std::move(n));
}

Formula Formula::app(std::string symbol, std::vector<Formula> args) {
  auto n = std::make_shared<Node>();
  n->is_var = false;
  n->head = std::move(symbol);
  n->args = std::move(args);
  int d = 0;
  size_t h = combine_hash(std::hash<std::string>{}(n->head), 2);
  for (const auto& a : n->args) {
    d = std::max(d, a.depth());
    h = combine_hash(h, a.hash());
  }
  n->depth = d + 1;
  n->hash = h;
  return Formula(std::move(n));
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash) return false;
  return compare(*this, other) == 0;
}

int compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
  if (int c = a.head().compare(b.head()); c != 0) return c < 0 ? -1 : 1;
  if (a.args().size() != b.args().size())
    return a.args().size() < b.args().size() ? -1 : 1;
  for (size_t i = 0; i < a.args().size(); ++i)
    if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
  return 0;
}

namespace {

void collect_vars(const Formula& f, std::set<std::string>& out) {
  if (f.is_var()) {
    out.insert(f.head());
    return;
  }
  for (const auto& a : f.args()) collect_vars(a, out);
}

}  // namespace

std::set<std::string> vars_of(const Formula& f) {
  std::set<std::string> out;
  collect_vars(f, out);
  return out;
}

std::set<std::string> vars_of(const std::vector<Formula>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) collect_vars(f, out);
  return out;
}

bool well_formed(const Formula& f, const Signature& sig, std::string* why) {
  if (f.is_var()) {
    if (!valid_variable_name(f.head())) {
      if (why) *why = "invalid variable name '" + f.head() + "'";
      return false;
    }
    return true;
  }
  const Signature::Symbol* s = sig.find(f.head());
  if (!s) {
    if (why) *why = "unknown symbol '" + f.head() + "'";
    return false;
  }
  if (static_cast<int>(f.args().size()) != s->arity) {
    if (why)
      *why = "symbol '" + f.head() + "' expects " + std::to_string(s->arity) +
             " argument(s), got " + std::to_string(f.args().size());
    return false;
  }
  for (const auto& a : f.args())
    if (!well_formed(a, sig, why)) return false;
  return true;
}

Formula substitute(const Formula& f, const Substitution& s) {
  if (f.is_var()) {
    auto it = s.find(f.head());
    return it == s.end() ? f : it->second;
  }
  bool changed = false;
  std::vector<Formula> args;
  args.reserve(f.args().size());
  for (const auto& a : f.args()) {
    Formula na = substitute(a, s);
    if (na != a) changed = true;
    args.push_back(std::move(na));
  }
  if (!changed) return f;
  return Formula::app(f.head(), std::move(args));
}

bool match_into(const Formula& pattern, const Formula& target,
                Substitution& binding) {
  if (pattern.is_var()) {
    auto it = binding.find(pattern.head());
    if (it != binding.end()) return it->second == target;
    binding.emplace(pattern.head(), target);
    return true;
  }
  if (target.is_var()) return false;
  if (pattern.head() != target.head() ||
      pattern.args().size() != target.args().size())
    return false;
  for (size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_into(pattern.args()[i], target.args()[i], binding)) return false;
  return true;
}

std::optional<Substitution> match(const Formula& pattern,
                                  const Formula& target) {
  Substitution binding;
  if (match_into(pattern, target, binding)) return binding;
  return std::nullopt;
}

namespace {

void collect_positions(const Formula& f, std::vector<int>& path,
                       std::vector<std::vector<int>>& out) {
  out.push_back(path);
  for (size_t i = 0; i < f.args().size(); ++i) {
    path.push_back(static_cast<int>(i));
    collect_positions(f.args()[i], path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> positions_of(const Formula& f) {
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  collect_positions(f, path, out);
  return out;
}

const Formula& subformula_at(const Formula& f, const std::vector<int>& path) {
  const Formula* cur = &f;
  for (int i : path) {
    if (i < 0 || i >= static_cast<int>(cur->args().size()))
      throw Error("invalid position in formula");
    cur = &cur->args()[i];
  }
  return *cur;
}

Formula replace_at(const Formula& f, const std::vector<int>& path,
                   const Formula& replacement) {
  if (path.empty()) return replacement;
  int i = path[0];
  if (f.is_var() || i < 0 || i >= static_cast<int>(f.args().size()))
    throw Error("invalid position in formula");
  std::vector<Formula> args = f.args();
  args[i] = replace_at(args[i], std::vector<int>(path.begin() + 1, path.end()),
                       replacement);
  return Formula::app(f.head(), std::move(args));
}

void collect_subformulas(const Formula& f, FormulaSet& out) {
  out.insert(f);
  for (const auto& a : f.args()) collect_subformulas(a, out);
}

std::vector<Formula> normalize_set(std::vector<Formula> fs) {
  std::sort(fs.begin(), fs.end(), FormulaLess{});
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  return fs;
}

bool set_contains(const std::vector<Formula>& sorted_set, const Formula& f) {
  return std::binary_search(sorted_set.begin(), sorted_set.end(), f,
                            FormulaLess{});
}

const Notation& Notation::standard() {
  static const Notation n = [] {
    Notation nota;
    nota.infix = {{"/\\", "and", 30, false, "and"},
                  {"\\/", "or", 20, false, "or"},
                  {"->", "to", 10, true, ""}};
    nota.aliases = {{"neg", "not"}};
    return nota;
  }();
  return n;
}

const Notation::Infix* Notation::by_token(std::string_view tok) const {
  for (const auto& i : infix)
    if (i.token == tok) return &i;
  return nullptr;
}

const Notation::Infix* Notation::by_symbol(std::string_view sym) const {
  for (const auto& i : infix)
    if (i.symbol == sym) return &i;
  return nullptr;
}

const Notation::Infix* Notation::by_word(std::string_view w) const {
  if (w.empty()) return nullptr;
  for (const auto& i : infix)
    if (i.word == w) return &i;
  return nullptr;
}

namespace {

// parent_prec: minimum precedence the child must expose to avoid parentheses.
void print_rec(const Formula& f, const Notation& nota, int parent_prec,
               bool bare_right, std::string& out) {
  if (f.is_var()) {
    out += f.head();
    return;
  }
  if (f.args().size() == 1) {
    out += f.head();
    out += ' ';
    const Formula& c = f.args()[0];
    bool parens = !c.is_var() && c.args().size() != 1 && nota.by_symbol(c.head());
    if (parens) out += '(';
    print_rec(c, nota, parens ? 0 : 1000, false, out);
    if (parens) out += ')';
    return;
  }
  const Notation::Infix* op =
      f.args().size() == 2 ? nota.by_symbol(f.head()) : nullptr;
  if (!op) {
    out += f.head();
    out += '(';
    for (size_t i = 0; i < f.args().size(); ++i) {
      if (i) out += ", ";
      print_rec(f.args()[i], nota, 0, false, out);
    }
    out += ')';
    return;
  }
  bool parens = op->prec < parent_prec || (op->prec == parent_prec && !bare_right);
  if (parens) out += '(';
  print_rec(f.args()[0], nota, op->prec + 1, false, out);
  out += ' ';
  out += op->token;
  out += ' ';
  print_rec(f.args()[1], nota, op->prec, op->right_assoc, out);
  if (parens) out += ')';
}

}  // namespace

std::string print_formula(const Formula& f, const Notation& nota) {
  std::string out;
  print_rec(f, nota, 0, false, out);
  return out;
}

std::string print_formula_list(const std::vector<Formula>& fs,
                               const Notation& nota) {
  std::string out;
  for (size_t i = 0; i < fs.size(); ++i) {
    if (i) out += ", ";
    out += print_formula(fs[i], nota);
  }
  return out;
}

std::string fresh_var(const std::set<std::string>& avoid,
                      const std::vector<std::string>& preferred) {
  for (const auto& p : preferred)
    if (!avoid.count(p)) return p;
  const std::string& base = preferred.empty() ? std::string("y") : preferred[0];
  for (int i = 0;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

}  // namespace plonkalog
