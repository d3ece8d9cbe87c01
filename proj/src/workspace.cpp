#include "plonkalog/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lexer.hpp"

namespace plonkalog {

namespace {

template <typename M>
const typename M::mapped_type& lookup(const M& m, const std::string& name,
                                      const char* kind) {
  auto it = m.find(name);
  if (it == m.end())
    throw Error(std::string("unknown ") + kind + " '" + name + "'");
  return it->second;
}

}  // namespace

const FiniteAlgebra& Workspace::algebra(const std::string& n) const {
  return lookup(algebras, n, "algebra");
}
const LogicalMatrix& Workspace::matrix(const std::string& n) const {
  return lookup(matrices, n, "matrix");
}
const RDirectSystem& Workspace::system(const std::string& n) const {
  return lookup(systems, n, "system");
}
const Calculus& Workspace::calculus(const std::string& n) const {
  return lookup(calculi, n, "calculus");
}
const std::vector<Formula>& Workspace::antitheorem(const std::string& n) const {
  return lookup(antitheorems, n, "antitheorem");
}
const CompanionCheck& Workspace::check(const std::string& n) const {
  return lookup(checks, n, "companion-check");
}

MatrixFamily Workspace::family_or_matrix(const std::string& n) const {
  auto fit = families.find(n);
  if (fit != families.end()) return fit->second;
  auto mit = matrices.find(n);
  if (mit != matrices.end()) return MatrixFamily::single(mit->second);
  throw Error("unknown matrix or family '" + n + "'");
}

namespace {

// ---------------------------------------------------------------------------
// Block parsing

class BlockParser {
 public:
  BlockParser(Workspace& ws, std::string_view text, std::string source)
      : ws_(ws), lx_(text), source_(std::move(source)) {}

  void run() {
    while (lx_.peek().type != Token::End) parse_block();
  }

 private:
  Workspace& ws_;
  Lexer lx_;
  std::string source_;

  [[noreturn]] void fail(const std::string& msg) {
    lx_.fail(source_ + ": " + msg, lx_.here());
  }

  // Names may contain dashes: b3-vs-clr.
  std::string parse_name() {
    std::string name = lx_.expect_ident("a name").text;
    while (lx_.peek().type == Token::Punct && lx_.peek().text == "-" &&
           lx_.peek(1).type == Token::Ident) {
      lx_.next();
      name += "-" + lx_.next().text;
    }
    return name;
  }

  // Rule names may carry a bracket suffix: H3[MP,1].
  std::string parse_rule_name() {
    std::string name = lx_.expect_ident("a rule name").text;
    if (lx_.accept("[")) {
      name += "[";
      bool first = true;
      while (!lx_.accept("]")) {
        if (!first) {
          lx_.expect(",", "in rule name");
          name += ",";
        }
        name += lx_.expect_ident("a rule name part").text;
        first = false;
      }
      name += "]";
    }
    return name;
  }

  // Element names may contain dots: i.0 (namespaced fibers).
  std::string parse_element() {
    std::string name = lx_.expect_ident("an element name").text;
    while (lx_.peek().type == Token::Punct && lx_.peek().text == "." &&
           lx_.peek(1).type == Token::Ident) {
      lx_.next();
      name += "." + lx_.next().text;
    }
    return name;
  }

  std::vector<std::string> parse_element_list() {
    std::vector<std::string> out;
    out.push_back(parse_element());
    while (lx_.accept(",")) out.push_back(parse_element());
    return out;
  }

  void skip_separators() {
    while (lx_.accept(";")) {
    }
  }

  template <typename M, typename V>
  void declare(M& map, const std::string& kind, const std::string& name,
               V value) {
    if (!map.emplace(name, std::move(value)).second)
      fail("duplicate " + kind + " '" + name + "'");
  }

  int parse_int(const std::string& what) {
    Token t = lx_.expect_ident(what);
    try {
      size_t used = 0;
      int v = std::stoi(t.text, &used);
      if (used != t.text.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      lx_.fail("expected a number for " + what + ", found '" + t.text + "'",
               t.pos);
    }
  }

  unsigned long long parse_ull(const std::string& what) {
    Token t = lx_.expect_ident(what);
    try {
      return std::stoull(t.text);
    } catch (...) {
      lx_.fail("expected a number for " + what + ", found '" + t.text + "'",
               t.pos);
    }
  }

  Signature parse_signature_value() {
    // Either a reference to a declared signature or an inline sym/arity list.
    if (lx_.peek().type == Token::Ident &&
        !(lx_.peek(1).type == Token::Punct && lx_.peek(1).text == "/")) {
      std::string ref = parse_name();
      auto it = ws_.signatures.find(ref);
      if (it == ws_.signatures.end()) fail("unknown signature '" + ref + "'");
      return it->second;
    }
    std::vector<Signature::Symbol> syms;
    while (true) {
      std::string sym = lx_.expect_ident("a symbol name").text;
      lx_.expect("/", "after symbol name");
      syms.push_back({sym, parse_int("arity")});
      if (!lx_.accept(",")) break;
    }
    return Signature::make(std::move(syms));
  }

  void parse_block() {
    Token t = lx_.expect_ident("a block keyword");
    std::string kw = t.text;
    if (kw == "companion" && lx_.accept("-")) {
      kw += "-" + lx_.expect_ident("block keyword").text;
    }
    if (kw == "signature") return parse_signature_block();
    if (kw == "algebra") return parse_algebra_block();
    if (kw == "semilattice") return parse_semilattice_block();
    if (kw == "matrix") return parse_matrix_block();
    if (kw == "family") return parse_family_block();
    if (kw == "system") return parse_system_block();
    if (kw == "calculus") return parse_calculus_block();
    if (kw == "antitheorem") return parse_antitheorem_block();
    if (kw == "companion-check" || kw == "check")
      return parse_check_block();
    lx_.fail("unknown block keyword '" + kw + "'", t.pos);
  }

  void parse_signature_block() {
    std::string name = parse_name();
    lx_.expect("{", "to open signature block");
    Signature sig = parse_signature_value();
    skip_separators();
    lx_.expect("}", "to close signature block");
    declare(ws_.signatures, "signature", name, std::move(sig));
  }

  void parse_algebra_block() {
    std::string name = parse_name();
    lx_.expect("{", "to open algebra block");
    std::vector<std::string> carrier;
    std::vector<Signature::Symbol> syms;
    struct RawTable {
      std::vector<std::pair<std::vector<std::string>, std::string>> entries;
      size_t pos;
    };
    std::vector<RawTable> raw;
    while (!lx_.at("}")) {
      skip_separators();
      if (lx_.at("}")) break;
      Token key = lx_.expect_ident("an algebra item");
      if (key.text == "elements") {
        lx_.expect(":", "after 'elements'");
        carrier = parse_element_list();
      } else if (key.text == "op") {
        std::string sym = lx_.expect_ident("a symbol name").text;
        lx_.expect("/", "after symbol name");
        int arity = parse_int("arity");
        lx_.expect(":", "after op declaration");
        syms.push_back({sym, arity});
        RawTable rt;
        rt.pos = lx_.here();
        do {
          std::vector<std::string> args;
          if (lx_.accept("(")) {
            args.push_back(parse_element());
            while (lx_.accept(",")) args.push_back(parse_element());
            lx_.expect(")", "to close argument tuple");
          } else {
            args.push_back(parse_element());
          }
          if (static_cast<int>(args.size()) != arity)
            fail("table entry for '" + sym + "' has " +
                 std::to_string(args.size()) + " argument(s), arity is " +
                 std::to_string(arity));
          lx_.expect("->", "in table entry");
          rt.entries.emplace_back(std::move(args), parse_element());
        } while (lx_.accept(","));
        raw.push_back(std::move(rt));
      } else {
        lx_.fail("unknown algebra item '" + key.text + "'", key.pos);
      }
      skip_separators();
    }
    lx_.expect("}", "to close algebra block");
    if (carrier.empty()) fail("algebra '" + name + "' declares no elements");
    Signature sig = Signature::make(syms);
    auto elem_index = [&](const std::string& e) {
      for (size_t i = 0; i < carrier.size(); ++i)
        if (carrier[i] == e) return static_cast<int>(i);
      fail("element '" + e + "' is not declared in algebra '" + name + "'");
      return -1;
    };
    std::vector<std::vector<int>> tables;
    for (size_t s = 0; s < syms.size(); ++s) {
      int arity = syms[s].arity;
      size_t total = 1;
      for (int k = 0; k < arity; ++k) total *= carrier.size();
      std::vector<int> table(total, -1);
      // Row-fill '_' expands over the carrier; later entries may not
      // contradict earlier ones.
      for (const auto& [args, res] : raw[s].entries) {
        int value = elem_index(res);
        std::vector<std::vector<int>> choices;
        for (const auto& a : args) {
          if (a == "_") {
            std::vector<int> all(carrier.size());
            for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
            choices.push_back(std::move(all));
          } else {
            choices.push_back({elem_index(a)});
          }
        }
        std::vector<size_t> pick(args.size(), 0);
        while (true) {
          size_t flat = 0;
          for (size_t k = 0; k < args.size(); ++k)
            flat = flat * carrier.size() + choices[k][pick[k]];
          if (table[flat] >= 0 && table[flat] != value)
            fail("table entry for '" + syms[s].name +
                 "' contradicts an earlier entry");
          table[flat] = value;
          int k = static_cast<int>(args.size()) - 1;
          for (; k >= 0; --k) {
            if (++pick[k] < choices[k].size()) break;
            pick[k] = 0;
          }
          if (k < 0) break;
        }
      }
      for (int v : table)
        if (v < 0)
          fail("table for '" + syms[s].name + "' in algebra '" + name +
               "' is not total");
      tables.push_back(std::move(table));
    }
    declare(ws_.algebras, "algebra", name,
            FiniteAlgebra::make(name, sig, carrier, tables));
  }

  void parse_semilattice_block() {
    std::string name = parse_name();
    lx_.expect("{", "to open semilattice block");
    std::vector<std::string> elements;
    std::vector<std::pair<std::pair<std::string, std::string>, std::string>>
        entries;
    while (!lx_.at("}")) {
      skip_separators();
      if (lx_.at("}")) break;
      Token key = lx_.expect_ident("a semilattice item");
      if (key.text == "elements") {
        lx_.expect(":", "after 'elements'");
        elements = parse_element_list();
      } else if (key.text == "join") {
        lx_.expect(":", "after 'join'");
        do {
          lx_.expect("(", "in join entry");
          std::string a = parse_element();
          lx_.expect(",", "in join entry");
          std::string b = parse_element();
          lx_.expect(")", "in join entry");
          lx_.expect("->", "in join entry");
          entries.push_back({{a, b}, parse_element()});
        } while (lx_.accept(","));
      } else {
        lx_.fail("unknown semilattice item '" + key.text + "'", key.pos);
      }
      skip_separators();
    }
    lx_.expect("}", "to close semilattice block");
    Semilattice s;
    s.elements = elements;
    int n = s.n();
    if (n == 0) fail("semilattice '" + name + "' declares no elements");
    auto idx = [&](const std::string& e) {
      int i = s.element_index(e);
      if (i < 0) fail("element '" + e + "' is not declared in semilattice '" +
                      name + "'");
      return i;
    };
    s.join.assign(static_cast<size_t>(n) * n, -1);
    for (int i = 0; i < n; ++i) s.join[i * n + i] = i;  // idempotence
    for (const auto& [ab, c] : entries) {
      int a = idx(ab.first), b = idx(ab.second), v = idx(c);
      for (auto [x, y] : {std::pair(a, b), std::pair(b, a)}) {  // commutativity
        int& cell = s.join[x * n + y];
        if (cell >= 0 && cell != v)
          fail("join entry (" + ab.first + "," + ab.second +
               ") contradicts an earlier entry");
        cell = v;
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (s.join[i * n + j] < 0)
          fail("semilattice '" + name + "' is missing join entry (" +
               s.elements[i] + "," + s.elements[j] + ")");
    declare(ws_.semilattices, "semilattice", name, std::move(s));
  }

  void parse_matrix_block() {
    std::string name = parse_name();
    lx_.expect("{", "to open matrix block");
    std::optional<std::string> alg;
    std::vector<std::string> filter;
    while (!lx_.at("}")) {
      skip_separators();
      if (lx_.at("}")) break;
      Token key = lx_.expect_ident("a matrix item");
      if (key.text == "algebra") {
        lx_.expect(":", "after 'algebra'");
        alg = parse_name();
      } else if (key.text == "filter") {
        lx_.expect(":", "after 'filter'");
        if (!lx_.at("}") && !lx_.at(";")) filter = parse_element_list();
      } else {
        lx_.fail("unknown matrix item '" + key.text + "'", key.pos);
      }
      skip_separators();
    }
    lx_.expect("}", "to close matrix block");
    if (!alg) fail("matrix '" + name + "' names no algebra");
    auto it = ws_.algebras.find(*alg);
    if (it == ws_.algebras.end()) fail("unknown algebra '" + *alg + "'");
    declare(ws_.matrices, "matrix", name,
            LogicalMatrix::make(name, it->second, filter));
  }

  void parse_family_block() {
    std::string name = parse_name();
    lx_.expect("{", "to open family block");
    lx_.expect("matrices", "in family block");
    lx_.expect(":", "after 'matrices'");
    std::vector<LogicalMatrix> ms;
    do {
      std::string mn = parse_name();
      auto it = ws_.matrices.find(mn);
      if (it == ws_.matrices.end()) fail("unknown matrix '" + mn + "'");
      ms.push_back(it->second);
    } while (lx_.accept(","));
    skip_separators();
    lx_.expect("}", "to close family block");
    declare(ws_.families, "family", name, MatrixFamily::make(name, ms));
  }

  void parse_system_block() {
    std::string name = parse_name();
    lx_.expect("{", "to open system block");
    std::optional<std::string> index_name;
    std::vector<std::pair<std::string, std::string>> fibers;  // index, matrix
    struct RawHom {
      std::string i, j;
      std::vector<std::pair<std::string, std::string>> entries;
    };
    std::vector<RawHom> homs;
    while (!lx_.at("}")) {
      skip_separators();
      if (lx_.at("}")) break;
      Token key = lx_.expect_ident("a system item");
      if (key.text == "index") {
        lx_.expect(":", "after 'index'");
        index_name = parse_name();
      } else if (key.text == "fiber") {
        std::string at = parse_element();
        lx_.expect(":", "after fiber index");
        fibers.emplace_back(at, parse_name());
      } else if (key.text == "hom") {
        RawHom h;
        lx_.expect("(", "after 'hom'");
        h.i = parse_element();
        lx_.expect(",", "in hom header");
        h.j = parse_element();
        lx_.expect(")", "in hom header");
        lx_.expect(":", "after hom header");
        do {
          std::string src = parse_element();
          lx_.expect("->", "in hom entry");
          h.entries.emplace_back(src, parse_element());
        } while (lx_.accept(","));
        homs.push_back(std::move(h));
      } else {
        lx_.fail("unknown system item '" + key.text + "'", key.pos);
      }
      skip_separators();
    }
    lx_.expect("}", "to close system block");
    if (!index_name) fail("system '" + name + "' names no index semilattice");
    auto sit = ws_.semilattices.find(*index_name);
    if (sit == ws_.semilattices.end())
      fail("unknown semilattice '" + *index_name + "'");
    const Semilattice& index = sit->second;

    RDirectSystem x;
    x.base.index = index;
    std::vector<const LogicalMatrix*> fiber_matrices(index.n(), nullptr);
    for (const auto& [at, mn] : fibers) {
      int i = index.element_index(at);
      if (i < 0) fail("fiber index '" + at + "' is not in semilattice '" +
                      *index_name + "'");
      auto it = ws_.matrices.find(mn);
      if (it == ws_.matrices.end()) fail("unknown matrix '" + mn + "'");
      if (fiber_matrices[i]) fail("duplicate fiber for index '" + at + "'");
      fiber_matrices[i] = &it->second;
    }
    for (int i = 0; i < index.n(); ++i)
      if (!fiber_matrices[i])
        fail("system '" + name + "' is missing a fiber for index '" +
             index.elements[i] + "'");
    // Namespace carriers only when they collide across fibers.
    bool collision = false;
    {
      std::set<std::string> seen;
      for (int i = 0; i < index.n(); ++i)
        for (const auto& e : fiber_matrices[i]->algebra.carrier)
          if (!seen.insert(e).second) collision = true;
    }
    x.filters.resize(index.n());
    for (int i = 0; i < index.n(); ++i) {
      FiniteAlgebra a = fiber_matrices[i]->algebra;
      if (collision) a = prefix_elements(a, index.elements[i]);
      a.name = name + "_" + index.elements[i];
      x.base.fibers.push_back(std::move(a));
      x.filters[i] = fiber_matrices[i]->filter;  // indices are rename-stable
    }
    for (const auto& h : homs) {
      int i = index.element_index(h.i), j = index.element_index(h.j);
      if (i < 0 || j < 0)
        fail("hom (" + h.i + "," + h.j + ") names an unknown index");
      const FiniteAlgebra& src = fiber_matrices[i]->algebra;
      const FiniteAlgebra& dst = fiber_matrices[j]->algebra;
      std::vector<int> map(src.carrier.size(), -1);
      for (const auto& [se, te] : h.entries) {
        int t = dst.element_index(te);
        if (t < 0)
          fail("hom (" + h.i + "," + h.j + "): unknown target element '" + te +
               "'");
        if (se == "_") {
          for (auto& cell : map)
            if (cell < 0) cell = t;
          continue;
        }
        int sidx = src.element_index(se);
        if (sidx < 0)
          fail("hom (" + h.i + "," + h.j + "): unknown source element '" + se +
               "'");
        if (map[sidx] >= 0 && map[sidx] != t)
          fail("hom (" + h.i + "," + h.j + "): entry for '" + se +
               "' contradicts an earlier entry");
        map[sidx] = t;
      }
      for (size_t e = 0; e < map.size(); ++e)
        if (map[e] < 0)
          fail("hom (" + h.i + "," + h.j + ") is missing an entry for '" +
               src.carrier[e] + "'");
      x.base.homs[{i, j}] = std::move(map);
    }
    x.base.add_identity_homs();
    declare(ws_.systems, "system", name, std::move(x));
  }

  void parse_calculus_block() {
    std::string name = parse_name();
    lx_.expect("{", "to open calculus block");
    Calculus c;
    c.name = name;
    bool have_sig = false;
    while (!lx_.at("}")) {
      skip_separators();
      if (lx_.at("}")) break;
      Token key = lx_.expect_ident("a calculus item");
      if (key.text == "signature") {
        lx_.expect(":", "after 'signature'");
        c.sig = parse_signature_value();
        have_sig = true;
        skip_separators();
        continue;
      }
      if (!have_sig)
        fail("calculus '" + name + "' must declare its signature first");
      std::string rn = parse_rule_name();
      lx_.expect(":", "after rule name");
      if (key.text == "axiom") {
        c.rules.push_back({rn, {}, parse_formula_stream(lx_, c.sig,
                                                        Notation::standard())});
      } else if (key.text == "rule" || key.text == "axiomguard" ||
                 key.text == "splice" || key.text == "explosion") {
        std::vector<Formula> prem;
        prem.push_back(parse_formula_stream(lx_, c.sig, Notation::standard()));
        while (lx_.accept(","))
          prem.push_back(parse_formula_stream(lx_, c.sig, Notation::standard()));
        lx_.expect("|-", "in rule");
        Formula concl = parse_formula_stream(lx_, c.sig, Notation::standard());
        Rule r{rn, std::move(prem), std::move(concl)};
        if (key.text == "rule") {
          c.rules.push_back(std::move(r));
        } else {
          SchemaKind k = key.text == "axiomguard" ? SchemaKind::AxiomGuard
                         : key.text == "splice"   ? SchemaKind::PremiseSplice
                                                  : SchemaKind::Antitheorem;
          c.schemas.push_back({k, rn, std::move(r), std::nullopt});
        }
      } else if (key.text == "rewrite") {
        Formula lhs = parse_formula_stream(lx_, c.sig, Notation::standard());
        lx_.expect("=", "in rewrite schema");
        Formula rhs = parse_formula_stream(lx_, c.sig, Notation::standard());
        c.schemas.push_back(
            {SchemaKind::Rewrite, rn, std::nullopt, Identity{lhs, rhs}});
      } else {
        lx_.fail("unknown calculus item '" + key.text + "'", key.pos);
      }
      skip_separators();
    }
    lx_.expect("}", "to close calculus block");
    declare(ws_.calculi, "calculus", name, std::move(c));
  }

  void parse_antitheorem_block() {
    std::string name = parse_name();
    lx_.expect("{", "to open antitheorem block");
    std::optional<Signature> sig;
    std::vector<Formula> formulas;
    while (!lx_.at("}")) {
      skip_separators();
      if (lx_.at("}")) break;
      Token key = lx_.expect_ident("an antitheorem item");
      if (key.text == "signature") {
        lx_.expect(":", "after 'signature'");
        sig = parse_signature_value();
      } else if (key.text == "formulas") {
        lx_.expect(":", "after 'formulas'");
        if (!sig) fail("antitheorem block must declare its signature first");
        formulas.push_back(parse_formula_stream(lx_, *sig, Notation::standard()));
        while (lx_.accept(","))
          formulas.push_back(
              parse_formula_stream(lx_, *sig, Notation::standard()));
      } else {
        lx_.fail("unknown antitheorem item '" + key.text + "'", key.pos);
      }
      skip_separators();
    }
    lx_.expect("}", "to close antitheorem block");
    if (formulas.empty()) fail("antitheorem '" + name + "' has no formulas");
    declare(ws_.antitheorems, "antitheorem", name, normalize_set(formulas));
  }

  void parse_check_block() {
    std::string name = parse_name();
    lx_.expect("{", "to open companion-check block");
    CompanionCheck cc;
    cc.name = name;
    while (!lx_.at("}")) {
      skip_separators();
      if (lx_.at("}")) break;
      Token key = lx_.expect_ident("a companion-check item");
      std::string k = key.text;
      if (k == "max" && lx_.accept("-")) k += "-" + lx_.expect_ident("key").text;
      lx_.expect(":", "after '" + k + "'");
      if (k == "candidate") {
        cc.candidate = parse_name();
      } else if (k == "base") {
        cc.base = parse_name();
      } else if (k == "antitheorem") {
        std::string v = parse_name();
        if (v != "none") cc.antitheorem = v;
      } else if (k == "reading") {
        cc.reading = antitheorem_mode_from_string(parse_name());
      } else if (k == "vars") {
        cc.vars.clear();
        cc.vars.push_back(lx_.expect_ident("a variable").text);
        while (lx_.accept(","))
          cc.vars.push_back(lx_.expect_ident("a variable").text);
      } else if (k == "depth") {
        cc.depth = parse_int("depth");
      } else if (k == "max-premises" || k == "premises") {
        cc.max_premises = parse_int("max premises");
      } else if (k == "limit") {
        cc.limit = parse_ull("limit");
      } else {
        lx_.fail("unknown companion-check item '" + k + "'", key.pos);
      }
      skip_separators();
    }
    lx_.expect("}", "to close companion-check block");
    if (cc.candidate.empty() || cc.base.empty())
      fail("companion-check '" + name + "' needs candidate and base");
    declare(ws_.checks, "companion-check", name, std::move(cc));
  }
};

}  // namespace

void load_text(Workspace& ws, std::string_view text,
               const std::string& source_name) {
  BlockParser(ws, text, source_name).run();
}

void load_file(Workspace& ws, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  load_text(ws, buf.str(), path);
}

// ---------------------------------------------------------------------------
// Emission

namespace {

std::string join_names(const std::vector<std::string>& ns) {
  std::string out;
  for (size_t i = 0; i < ns.size(); ++i) {
    if (i) out += ", ";
    out += ns[i];
  }
  return out;
}

void emit_signature_inline(const Signature& sig, std::string& out) {
  for (size_t i = 0; i < sig.symbols.size(); ++i) {
    if (i) out += ", ";
    out += sig.symbols[i].name + "/" + std::to_string(sig.symbols[i].arity);
  }
}

}  // namespace

std::string emit(const FiniteAlgebra& a) {
  std::string out = "algebra " + a.name + " {\n";
  out += "  elements: " + join_names(a.carrier) + "\n";
  std::vector<int> args(8);
  for (size_t s = 0; s < a.sig.symbols.size(); ++s) {
    const auto& sym = a.sig.symbols[s];
    out += "  op " + sym.name + "/" + std::to_string(sym.arity) + ": ";
    size_t total = a.table_size(sym.arity);
    for (size_t flat = 0; flat < total; ++flat) {
      if (flat) out += ", ";
      size_t rest = flat;
      for (int k = sym.arity - 1; k >= 0; --k) {
        args[k] = static_cast<int>(rest % a.carrier.size());
        rest /= a.carrier.size();
      }
      if (sym.arity == 1) {
        out += a.carrier[args[0]];
      } else {
        out += "(";
        for (int k = 0; k < sym.arity; ++k) {
          if (k) out += ",";
          out += a.carrier[args[k]];
        }
        out += ")";
      }
      out += "->" + a.carrier[a.tables[s][flat]];
    }
    out += "\n";
  }
  out += "}\n";
  return out;
}

std::string emit(const LogicalMatrix& m) {
  std::string out = "matrix " + m.name + " {\n";
  out += "  algebra: " + m.algebra.name + "\n";
  out += "  filter: " + join_names(m.filter_names()) + "\n";
  out += "}\n";
  return out;
}

std::string emit(const Semilattice& s) {
  std::string out = "semilattice SL {\n";
  out += "  elements: " + join_names(s.elements) + "\n";
  out += "  join: ";
  bool first = true;
  for (int i = 0; i < s.n(); ++i)
    for (int j = 0; j < s.n(); ++j) {
      if (!first) out += ", ";
      out += "(" + s.elements[i] + "," + s.elements[j] + ")->" +
             s.elements[s.join_of(i, j)];
      first = false;
    }
  out += "\n}\n";
  return out;
}

std::string emit_system(const RDirectSystem& x, const std::string& name) {
  std::string out;
  {
    std::string sl = emit(x.base.index);
    const std::string placeholder = "semilattice SL ";
    sl.replace(sl.find(placeholder), placeholder.size(),
               "semilattice " + name + "_index ");
    out += sl + "\n";
  }
  for (int i = 0; i < x.base.index.n(); ++i) {
    FiniteAlgebra a = x.base.fibers[i];
    a.name = name + "_alg_" + x.base.index.elements[i];
    out += emit(a) + "\n";
    LogicalMatrix m;
    std::vector<std::string> filter;
    for (int e : x.filters[i]) filter.push_back(a.carrier[e]);
    m = LogicalMatrix::make(name + "_fiber_" + x.base.index.elements[i], a,
                            filter);
    out += emit(m) + "\n";
  }
  out += "system " + name + " {\n";
  out += "  index: " + name + "_index\n";
  for (int i = 0; i < x.base.index.n(); ++i)
    out += "  fiber " + x.base.index.elements[i] + ": " + name + "_fiber_" +
           x.base.index.elements[i] + "\n";
  for (const auto& [ij, map] : x.base.homs) {
    auto [i, j] = ij;
    if (i == j) continue;
    out += "  hom (" + x.base.index.elements[i] + "," +
           x.base.index.elements[j] + "): ";
    for (size_t e = 0; e < map.size(); ++e) {
      if (e) out += ", ";
      out += x.base.fibers[i].carrier[e] + "->" +
             x.base.fibers[j].carrier[map[e]];
    }
    out += "\n";
  }
  out += "}\n";
  return out;
}

std::string emit(const Calculus& c) {
  std::string out = "calculus " + c.name + " {\n";
  out += "  signature: ";
  emit_signature_inline(c.sig, out);
  out += "\n";
  for (const auto& r : c.rules) {
    if (r.is_axiom()) {
      out += "  axiom " + r.name + ": " + print_formula(r.conclusion) + "\n";
    } else {
      out += "  rule " + r.name + ": " + print_formula_list(r.premises) +
             " |- " + print_formula(r.conclusion) + "\n";
    }
  }
  for (const auto& s : c.schemas) {
    if (s.kind == SchemaKind::Rewrite) {
      out += "  rewrite " + s.name + ": " + print_formula(s.equation->lhs) +
             " = " + print_formula(s.equation->rhs) + "\n";
    } else {
      out += "  " + to_string(s.kind) + " " + s.name + ": " +
             print_formula_list(s.pattern->premises) + " |- " +
             print_formula(s.pattern->conclusion) + "\n";
    }
  }
  out += "}\n";
  return out;
}

std::string emit(const Derivation& d, const Notation& nota) {
  std::string out;
  for (size_t i = 0; i < d.steps.size(); ++i) {
    const auto& st = d.steps[i];
    out += std::to_string(i + 1) + ". " + print_formula(st.formula, nota);
    switch (st.just.kind) {
      case Justification::Kind::Premise:
        out += "  by premise";
        break;
      case Justification::Kind::RuleApp:
      case Justification::Kind::RewriteApp:
        out += "  by " + st.just.rule;
        if (!st.just.from.empty()) {
          out += " from ";
          for (size_t k = 0; k < st.just.from.size(); ++k) {
            if (k) out += ", ";
            out += std::to_string(st.just.from[k] + 1);
          }
        }
        if (st.just.kind == Justification::Kind::RewriteApp) {
          out += " at ";
          if (st.just.path.empty()) {
            out += "root";
          } else {
            for (size_t k = 0; k < st.just.path.size(); ++k) {
              if (k) out += ".";
              out += std::to_string(st.just.path[k]);
            }
          }
        }
        break;
    }
    out += "\n";
  }
  return out;
}

Derivation parse_derivation(std::string_view text, const Signature& sig,
                            const Notation& nota) {
  Lexer lx(text);
  Derivation d;
  while (lx.peek().type != Token::End) {
    Token num = lx.expect_ident("a step number");
    int no = 0;
    try {
      no = std::stoi(num.text);
    } catch (...) {
      lx.fail("expected a step number, found '" + num.text + "'", num.pos);
    }
    if (no != static_cast<int>(d.steps.size()) + 1)
      lx.fail("steps must be numbered consecutively from 1; found " + num.text,
              num.pos);
    lx.expect(".", "after step number");
    Formula f = parse_formula_stream(lx, sig, nota);
    Token by = lx.expect_ident("'by'");
    if (by.text != "by") lx.fail("expected 'by' after the step formula", by.pos);
    Justification j;
    Token rn = lx.expect_ident("a rule name");
    if (rn.text == "premise") {
      j.kind = Justification::Kind::Premise;
    } else {
      std::string name = rn.text;
      if (lx.accept("[")) {
        name += "[";
        bool first = true;
        while (!lx.accept("]")) {
          if (!first) {
            lx.expect(",", "in rule name");
            name += ",";
          }
          name += lx.expect_ident("a rule name part").text;
          first = false;
        }
        name += "]";
      }
      j.kind = Justification::Kind::RuleApp;
      j.rule = name;
      if (lx.peek().type == Token::Ident && lx.peek().text == "from") {
        lx.next();
        do {
          Token st = lx.expect_ident("a step reference");
          int ref = 0;
          try {
            ref = std::stoi(st.text);
          } catch (...) {
            lx.fail("expected a step number after 'from'", st.pos);
          }
          j.from.push_back(ref - 1);
        } while (lx.accept(","));
      }
      if (lx.peek().type == Token::Ident && lx.peek().text == "at") {
        lx.next();
        j.kind = Justification::Kind::RewriteApp;
        Token p = lx.expect_ident("a position");
        auto as_pos = [&lx](const Token& tk) {
          try {
            return std::stoi(tk.text);
          } catch (...) {
            lx.fail("expected a numeric position after 'at'", tk.pos);
          }
        };
        if (p.text != "root") {
          j.path.push_back(as_pos(p));
          while (lx.accept("."))
            j.path.push_back(as_pos(lx.expect_ident("a position")));
        }
      }
      if (lx.peek().type == Token::Ident && lx.peek().text == "with") {
        lx.next();
        Substitution s;
        do {
          std::string v = lx.expect_ident("a variable").text;
          lx.expect("=", "in substitution");
          s.emplace(v, parse_formula_stream(lx, sig, nota));
        } while (lx.accept(","));
        j.subst = std::move(s);
      }
    }
    d.steps.push_back({std::move(f), std::move(j)});
  }
  return d;
}

}  // namespace plonkalog
