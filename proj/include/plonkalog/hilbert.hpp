#pragma once

#include "plonkalog/containment.hpp"

namespace plonkalog {

/// Finite Hilbert rule: premise patterns and a conclusion pattern, closed
/// under substitution. Empty premises = axiom.
struct Rule {
  std::string name;
  std::vector<Formula> premises;
  Formula conclusion;
  bool is_axiom() const { return premises.empty(); }
  bool operator==(const Rule&) const = default;
};

enum class SchemaKind { AxiomGuard, PremiseSplice, Antitheorem, Rewrite };

std::string to_string(SchemaKind k);

/// Rule families produced by the containment transformation. The first three
/// kinds are substitution-closed pattern rules (payload in `pattern`); the
/// rewrite kind carries a partition-function equation applied at one subterm
/// occurrence per step, in either direction.
struct RuleSchema {
  SchemaKind kind = SchemaKind::Rewrite;
  std::string name;
  std::optional<Rule> pattern;
  std::optional<Identity> equation;
  bool operator==(const RuleSchema& o) const;
};

struct Calculus {
  std::string name;
  Signature sig;
  std::vector<Rule> rules;
  std::vector<RuleSchema> schemas;

  const Rule* find_rule(std::string_view name) const;
  const RuleSchema* find_schema(std::string_view name) const;
  /// Every substitution-closed rule (plain rules plus pattern schemas) as
  /// sequents, for matrix model checking.
  std::vector<Sequent> pattern_sequents() const;
};

bool calculi_equal(const Calculus& a, const Calculus& b);

struct Justification {
  enum class Kind { Premise, RuleApp, RewriteApp };
  Kind kind = Kind::Premise;
  std::string rule;                   // RuleApp / RewriteApp
  std::vector<int> from;              // 0-based earlier step indices
  std::vector<int> path;              // RewriteApp: rewritten position
  std::optional<Substitution> subst;  // RuleApp: explicit instance check
};

struct DerivationStep {
  Formula formula;
  Justification just;
};

struct Derivation {
  std::vector<DerivationStep> steps;
};

struct DerivationCheck {
  bool ok = false;
  int first_invalid_step = 0;  // 1-based; 0 when valid
  std::string reason;
};

DerivationCheck check_derivation(const Calculus& c,
                                 const std::vector<Formula>& premises,
                                 const Derivation& d);

struct SearchBounds {
  int max_steps = 2000;
  int max_formula_depth = 6;
};

/// Forward-chaining saturation; schema instantiation is restricted to the
/// bounded universe, so absence of a result is not a refutation. Any returned
/// derivation passes check_derivation.
std::optional<Derivation> derive_bounded(const Calculus& c,
                                         const std::vector<Formula>& premises,
                                         const Formula& goal,
                                         const SearchBounds& bounds = {});

/// The containment transformation: guards every axiom (H0), adds the star
/// rules (H1, H2), splices the star into every rule premise (H3), adds
/// explosion from sigma when given (H4) and one rewrite schema per
/// partition-function equation (H5).
Calculus transform_to_containment(const Calculus& h, const Formula& star,
                                  const std::optional<std::vector<Formula>>& sigma);

}  // namespace plonkalog
