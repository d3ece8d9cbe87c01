#include "plonkalog/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace plonkalog {

std::string ValidationReport::to_string() const {
  if (ok()) return "valid\n";
  std::string out;
  for (const auto& p : problems) {
    out += p;
    out += '\n';
  }
  return out;
}

size_t FiniteAlgebra::table_size(int arity) const {
  size_t s = 1;
  for (int i = 0; i < arity; ++i) s *= carrier.size();
  return s;
}

FiniteAlgebra FiniteAlgebra::make(std::string name, Signature sig,
                                  std::vector<std::string> carrier,
                                  std::vector<std::vector<int>> tables) {
  FiniteAlgebra a;
  a.name = std::move(name);
  a.sig = std::move(sig);
  a.carrier = std::move(carrier);
  a.tables = std::move(tables);
  if (a.carrier.empty()) throw Error("algebra '" + a.name + "': empty carrier");
  {
    auto sorted = a.carrier;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("algebra '" + a.name + "': duplicate carrier element");
  }
  if (a.tables.size() != a.sig.symbols.size())
    throw Error("algebra '" + a.name + "': expected one table per symbol");
  for (size_t s = 0; s < a.tables.size(); ++s) {
    size_t want = a.table_size(a.sig.symbols[s].arity);
    if (a.tables[s].size() != want)
      throw Error("algebra '" + a.name + "': table for '" +
                  a.sig.symbols[s].name + "' is not total (" +
                  std::to_string(a.tables[s].size()) + " of " +
                  std::to_string(want) + " entries)");
    for (int v : a.tables[s])
      if (v < 0 || v >= a.n())
        throw Error("algebra '" + a.name + "': table for '" +
                    a.sig.symbols[s].name + "' leaves the carrier");
  }
  return a;
}

int FiniteAlgebra::element_index(std::string_view e) const {
  for (int i = 0; i < n(); ++i)
    if (carrier[i] == e) return i;
  return -1;
}

int FiniteAlgebra::symbol_index(std::string_view s) const {
  for (size_t i = 0; i < sig.symbols.size(); ++i)
    if (sig.symbols[i].name == s) return static_cast<int>(i);
  return -1;
}

int FiniteAlgebra::apply(int sym, std::span<const int> args) const {
  size_t idx = 0;
  for (int a : args) idx = idx * carrier.size() + static_cast<size_t>(a);
  return tables[sym][idx];
}

bool algebras_equal(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.sig != b.sig) return false;
  if (a.carrier.size() != b.carrier.size()) return false;
  std::vector<int> a_to_b(a.carrier.size());
  for (int i = 0; i < a.n(); ++i) {
    int j = b.element_index(a.carrier[i]);
    if (j < 0) return false;
    a_to_b[i] = j;
  }
  std::vector<int> args_a(8), args_b(8);
  for (size_t s = 0; s < a.sig.symbols.size(); ++s) {
    int arity = a.sig.symbols[s].arity;
    size_t total = a.table_size(arity);
    for (size_t flat = 0; flat < total; ++flat) {
      size_t rest = flat;
      for (int k = arity - 1; k >= 0; --k) {
        args_a[k] = static_cast<int>(rest % a.carrier.size());
        rest /= a.carrier.size();
      }
      for (int k = 0; k < arity; ++k) args_b[k] = a_to_b[args_a[k]];
      int ra = a.apply(static_cast<int>(s), std::span(args_a.data(), arity));
      int rb = b.apply(static_cast<int>(s), std::span(args_b.data(), arity));
      if (a_to_b[ra] != rb) return false;
    }
  }
  return true;
}

FiniteAlgebra rename_elements(const FiniteAlgebra& a,
                              const std::vector<std::string>& new_names,
                              const std::string& new_name) {
  FiniteAlgebra b = a;
  if (new_names.size() != a.carrier.size())
    throw Error("rename_elements: size mismatch");
  b.carrier = new_names;
  if (!new_name.empty()) b.name = new_name;
  return FiniteAlgebra::make(b.name, b.sig, b.carrier, b.tables);
}

FiniteAlgebra canonical_form(const FiniteAlgebra& a) {
  std::vector<int> order(a.carrier.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a.carrier[i] < a.carrier[j]; });
  std::vector<int> new_of_old(a.carrier.size());
  std::vector<std::string> carrier(a.carrier.size());
  for (size_t k = 0; k < order.size(); ++k) {
    new_of_old[order[k]] = static_cast<int>(k);
    carrier[k] = a.carrier[order[k]];
  }
  std::vector<std::vector<int>> tables(a.tables.size());
  std::vector<int> args(8);
  for (size_t s = 0; s < a.sig.symbols.size(); ++s) {
    int arity = a.sig.symbols[s].arity;
    size_t total = a.table_size(arity);
    tables[s].resize(total);
    for (size_t flat = 0; flat < total; ++flat) {
      size_t rest = flat;
      for (int k = arity - 1; k >= 0; --k) {
        args[k] = order[rest % a.carrier.size()];
        rest /= a.carrier.size();
      }
      tables[s][flat] =
          new_of_old[a.apply(static_cast<int>(s), std::span(args.data(), arity))];
    }
  }
  return FiniteAlgebra::make(a.name, a.sig, std::move(carrier),
                             std::move(tables));
}

int evaluate(const FiniteAlgebra& a, const Formula& f,
             const std::map<std::string, int>& assignment) {
  if (f.is_var()) {
    auto it = assignment.find(f.head());
    if (it == assignment.end())
      throw Error("unbound variable '" + f.head() + "' in evaluation");
    return it->second;
  }
  int sym = a.symbol_index(f.head());
  if (sym < 0)
    throw Error("symbol '" + f.head() + "' absent from algebra '" + a.name +
                "'");
  std::vector<int> args;
  args.reserve(f.args().size());
  for (const auto& arg : f.args()) args.push_back(evaluate(a, arg, assignment));
  return a.apply(sym, args);
}

bool check_homomorphism(const FiniteAlgebra& src, const FiniteAlgebra& dst,
                        const std::vector<int>& map, std::string* why) {
  if (src.sig != dst.sig) throw Error("check_homomorphism: signature mismatch");
  if (map.size() != src.carrier.size())
    throw Error("check_homomorphism: map is not total on the source carrier");
  for (int v : map)
    if (v < 0 || v >= dst.n())
      throw Error("check_homomorphism: map leaves the target carrier");
  std::vector<int> args_s(8), args_d(8);
  for (size_t s = 0; s < src.sig.symbols.size(); ++s) {
    int arity = src.sig.symbols[s].arity;
    size_t total = src.table_size(arity);
    for (size_t flat = 0; flat < total; ++flat) {
      size_t rest = flat;
      for (int k = arity - 1; k >= 0; --k) {
        args_s[k] = static_cast<int>(rest % src.carrier.size());
        rest /= src.carrier.size();
      }
      for (int k = 0; k < arity; ++k) args_d[k] = map[args_s[k]];
      int lhs = map[src.apply(static_cast<int>(s), std::span(args_s.data(), arity))];
      int rhs = dst.apply(static_cast<int>(s), std::span(args_d.data(), arity));
      if (lhs != rhs) {
        if (why) {
          std::string w = "h(" + src.sig.symbols[s].name + "(";
          for (int k = 0; k < arity; ++k) {
            if (k) w += ",";
            w += src.carrier[args_s[k]];
          }
          *why = w + ")) = " + dst.carrier[lhs] + " but applying in the target gives " +
                 dst.carrier[rhs];
        }
        return false;
      }
    }
  }
  return true;
}

int Semilattice::element_index(std::string_view e) const {
  for (int i = 0; i < n(); ++i)
    if (elements[i] == e) return i;
  return -1;
}

ValidationReport validate_semilattice(const Semilattice& s) {
  ValidationReport r;
  int n = s.n();
  if (n == 0) {
    r.add("semilattice has no elements");
    return r;
  }
  if (s.join.size() != static_cast<size_t>(n) * n) {
    r.add("join table is not total");
    return r;
  }
  for (int v : s.join)
    if (v < 0 || v >= n) {
      r.add("join table leaves the element set");
      return r;
    }
  for (int i = 0; i < n; ++i)
    if (s.join_of(i, i) != i)
      r.add("idempotence fails: " + s.elements[i] + " v " + s.elements[i] +
            " = " + s.elements[s.join_of(i, i)]);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (s.join_of(i, j) != s.join_of(j, i))
        r.add("commutativity fails: " + s.elements[i] + " v " + s.elements[j] +
              " = " + s.elements[s.join_of(i, j)] + " but " + s.elements[j] +
              " v " + s.elements[i] + " = " + s.elements[s.join_of(j, i)]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (s.join_of(i, s.join_of(j, k)) != s.join_of(s.join_of(i, j), k)) {
          r.add("associativity fails at (" + s.elements[i] + "," +
                s.elements[j] + "," + s.elements[k] + ")");
          return r;
        }
  return r;
}

bool is_regular_identity(const Identity& e) {
  return vars_of(e.lhs) == vars_of(e.rhs);
}

namespace {

// Lexicographically first assignment (sorted variable names, carrier order)
// falsifying lhs = rhs, if any.
bool find_identity_counterexample(const FiniteAlgebra& a, const Identity& e,
                                  std::map<std::string, std::string>* out) {
  std::set<std::string> vs = vars_of(e.lhs);
  for (const auto& v : vars_of(e.rhs)) vs.insert(v);
  std::vector<std::string> vars(vs.begin(), vs.end());
  std::vector<int> asg(vars.size(), 0);
  std::map<std::string, int> env;
  while (true) {
    for (size_t i = 0; i < vars.size(); ++i) env[vars[i]] = asg[i];
    if (evaluate(a, e.lhs, env) != evaluate(a, e.rhs, env)) {
      if (out) {
        out->clear();
        for (size_t i = 0; i < vars.size(); ++i)
          (*out)[vars[i]] = a.carrier[asg[i]];
      }
      return true;
    }
    int i = static_cast<int>(vars.size()) - 1;
    for (; i >= 0; --i) {
      if (++asg[i] < a.n()) break;
      asg[i] = 0;
    }
    if (i < 0) return false;
  }
}

}  // namespace

IdentityCheck check_identity(const FiniteAlgebra& a, const Identity& e) {
  IdentityCheck c;
  c.holds = !find_identity_counterexample(a, e, &c.counterexample);
  return c;
}

Formula star_apply(const Formula& star, const Formula& a, const Formula& b) {
  return substitute(star, {{"x", a}, {"y", b}});
}

std::vector<NamedIdentity> partition_equations(const Signature& sig,
                                               const Formula& star) {
  if (vars_of(star) != std::set<std::string>{"x", "y"})
    throw Error("star term must use exactly the variables x and y");
  auto st = [&](const Formula& a, const Formula& b) {
    return star_apply(star, a, b);
  };
  Formula x = Formula::var("x"), y = Formula::var("y"), z = Formula::var("z");
  std::vector<NamedIdentity> out;
  out.push_back({"P1", {st(x, x), x}});
  out.push_back({"P2", {st(x, st(y, z)), st(st(x, y), z)}});
  out.push_back({"P3", {st(x, st(y, z)), st(x, st(z, y))}});
  for (const auto& g : sig.symbols) {
    std::vector<Formula> xs;
    for (int i = 1; i <= g.arity; ++i)
      xs.push_back(Formula::var("x" + std::to_string(i)));
    Formula gx = Formula::app(g.name, xs);
    std::vector<Formula> guarded;
    for (const auto& xi : xs) guarded.push_back(st(xi, y));
    out.push_back(
        {"P4[" + g.name + "]", {st(gx, y), Formula::app(g.name, guarded)}});
    Formula chain = y;
    for (const auto& xi : xs) chain = st(chain, xi);
    out.push_back({"P5[" + g.name + "]", {st(y, gx), chain}});
  }
  return out;
}

PartitionCheck check_partition_function(const FiniteAlgebra& a,
                                        const Formula& star) {
  std::string why;
  if (!well_formed(star, a.sig, &why))
    throw Error("star term is not well formed over the algebra: " + why);
  PartitionCheck c;
  for (const auto& eq : partition_equations(a.sig, star)) {
    std::map<std::string, std::string> cex;
    if (find_identity_counterexample(a, eq.id, &cex)) {
      c.ok = false;
      c.failed_axiom = eq.name;
      c.assignment = std::move(cex);
      return c;
    }
  }
  c.ok = true;
  return c;
}

}  // namespace plonkalog
