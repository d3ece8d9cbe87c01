#pragma once

#include <span>

#include "plonkalog/syntax.hpp"

namespace plonkalog {

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
  void add(std::string p) { problems.push_back(std::move(p)); }
  std::string to_string() const;
};

/// Total operation tables over a finite named carrier. Table for an n-ary
/// symbol is stored flat, row-major in argument order.
struct FiniteAlgebra {
  std::string name;
  Signature sig;
  std::vector<std::string> carrier;
  std::vector<std::vector<int>> tables;  // parallel to sig.symbols

  static FiniteAlgebra make(std::string name, Signature sig,
                            std::vector<std::string> carrier,
                            std::vector<std::vector<int>> tables);

  int n() const { return static_cast<int>(carrier.size()); }
  int element_index(std::string_view e) const;  // -1 when absent
  int symbol_index(std::string_view s) const;   // -1 when absent
  int apply(int sym, std::span<const int> args) const;
  size_t table_size(int arity) const;
};

/// Equality as values: same signature, same carrier as a set, and tables that
/// agree entry-for-entry under element names.
bool algebras_equal(const FiniteAlgebra& a, const FiniteAlgebra& b);

/// Same algebra with the carrier sorted lexicographically (tables re-indexed).
FiniteAlgebra canonical_form(const FiniteAlgebra& a);

FiniteAlgebra rename_elements(const FiniteAlgebra& a,
                              const std::vector<std::string>& new_names,
                              const std::string& new_name = "");

int evaluate(const FiniteAlgebra& a, const Formula& f,
             const std::map<std::string, int>& assignment);

bool check_homomorphism(const FiniteAlgebra& src, const FiniteAlgebra& dst,
                        const std::vector<int>& map,
                        std::string* why = nullptr);

struct Semilattice {
  std::vector<std::string> elements;
  std::vector<int> join;  // n*n, row-major

  int n() const { return static_cast<int>(elements.size()); }
  int join_of(int i, int j) const { return join[i * n() + j]; }
  bool leq(int i, int j) const { return join_of(i, j) == j; }
  int element_index(std::string_view e) const;
};

ValidationReport validate_semilattice(const Semilattice& s);

struct Identity {
  Formula lhs;
  Formula rhs;
};

bool is_regular_identity(const Identity& e);

struct IdentityCheck {
  bool holds = false;
  std::map<std::string, std::string> counterexample;  // first failing, lex order
};

IdentityCheck check_identity(const FiniteAlgebra& a, const Identity& e);

/// star(a, b): the star term with x := a, y := b.
Formula star_apply(const Formula& star, const Formula& a, const Formula& b);

struct NamedIdentity {
  std::string name;  // P1, P2, P3, P4[g], P5[g]
  Identity id;
};

/// The five partition-function identity schemas for `star`, with P4/P5
/// instantiated once per signature symbol over fresh variables.
std::vector<NamedIdentity> partition_equations(const Signature& sig,
                                               const Formula& star);

struct PartitionCheck {
  bool ok = false;
  std::string failed_axiom;  // e.g. "P4[not]"
  std::map<std::string, std::string> assignment;
};

PartitionCheck check_partition_function(const FiniteAlgebra& a,
                                        const Formula& star);

}  // namespace plonkalog
