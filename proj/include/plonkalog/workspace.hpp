#pragma once

#include <variant>

#include "plonkalog/hilbert.hpp"
#include "plonkalog/plonka.hpp"

namespace plonkalog {

struct CompanionCheck {
  std::string name;
  std::string candidate;  // matrix or family name
  std::string base;       // matrix or family name
  std::optional<std::string> antitheorem;  // named antitheorem
  std::optional<AntitheoremMode> reading;
  std::vector<std::string> vars = {"p", "q", "r"};
  int depth = 2;
  int max_premises = 2;
  unsigned long long limit = 25'000'000'000ULL;
};

/// Parsed declarations keyed by name, one namespace per kind.
struct Workspace {
  std::map<std::string, Signature> signatures;
  std::map<std::string, FiniteAlgebra> algebras;
  std::map<std::string, Semilattice> semilattices;
  std::map<std::string, LogicalMatrix> matrices;
  std::map<std::string, MatrixFamily> families;
  std::map<std::string, RDirectSystem> systems;
  std::map<std::string, Calculus> calculi;
  std::map<std::string, std::vector<Formula>> antitheorems;
  std::map<std::string, CompanionCheck> checks;

  const FiniteAlgebra& algebra(const std::string& name) const;
  const LogicalMatrix& matrix(const std::string& name) const;
  const RDirectSystem& system(const std::string& name) const;
  const Calculus& calculus(const std::string& name) const;
  const std::vector<Formula>& antitheorem(const std::string& name) const;
  const CompanionCheck& check(const std::string& name) const;
  /// A named matrix as a singleton family, or a named family.
  MatrixFamily family_or_matrix(const std::string& name) const;
};

void load_text(Workspace& ws, std::string_view text,
               const std::string& source_name = "<input>");
void load_file(Workspace& ws, const std::string& path);

std::string emit(const FiniteAlgebra& a);
std::string emit(const LogicalMatrix& m);
std::string emit(const Semilattice& s);
/// Emits the semilattice, fiber algebra and matrix blocks, then the system
/// block, so the result is loadable stand-alone.
std::string emit_system(const RDirectSystem& x, const std::string& name);
std::string emit(const Calculus& c);
std::string emit(const Derivation& d,
                 const Notation& nota = Notation::standard());

Derivation parse_derivation(std::string_view text, const Signature& sig,
                            const Notation& nota = Notation::standard());

/// Compiled-in fixture catalog (paper tables and calculi).
const Workspace& builtins();

using BuiltinValue = std::variant<FiniteAlgebra, LogicalMatrix, Calculus>;
BuiltinValue builtin(const std::string& name);

}  // namespace plonkalog
