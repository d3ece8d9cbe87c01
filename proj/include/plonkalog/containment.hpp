#pragma once

#include <cstdint>
#include <functional>

#include "plonkalog/matrix.hpp"

namespace plonkalog {

/// How the antitheorem disjunct of the containment companion is decided.
///  - Semantic: Gamma itself is an antitheorem of the base logic, decided as
///    entails(family, Gamma, y) for a fresh y. This is the reading under
///    which the companion coincides with the candidate matrices.
///  - Instance: some uniform substitution instance of Sigma(x) is a subset
///    of Gamma.
///  - Literal: Sigma(x) is a subset of Gamma verbatim.
///  - None: the disjunct is dropped.
enum class AntitheoremMode { Semantic, Instance, Literal, None };

AntitheoremMode antitheorem_mode_from_string(const std::string& s);
std::string to_string(AntitheoremMode m);

struct BaseLogic {
  MatrixFamily family;
  std::optional<std::vector<Formula>> antitheorem;  // Sigma(x), normalized
  AntitheoremMode mode = AntitheoremMode::None;

  /// Validates Sigma (when present) with is_antitheorem. Default mode is
  /// Semantic with Sigma, None without.
  static BaseLogic make(MatrixFamily family,
                        std::optional<std::vector<Formula>> sigma,
                        std::optional<AntitheoremMode> mode = std::nullopt);
};

bool antitheorem_clause(const BaseLogic& base,
                        const std::vector<Formula>& premises);
bool containment_entails(const BaseLogic& base,
                         const std::vector<Formula>& premises,
                         const Formula& conclusion);

struct RpfCheck {
  bool ok = false;
  std::string clause;  // "(i)", "(ii)", or the failing P axiom
  std::string detail;
};

/// (i) x,y |- x*y; (ii) x*y |- x; (iii) P1-P5 hold on every algebra reduct
/// of the presented family (an approximation of Alg of the logic).
RpfCheck verify_r_partition_function(const BaseLogic& base,
                                     const Formula& star);

/// All formulas over `vars` up to `max_depth`, deterministic order: by depth,
/// then symbol declaration order, then argument tuples.
std::vector<Formula> enumerate_formulas(const Signature& sig,
                                        const std::vector<std::string>& vars,
                                        int max_depth);

/// Per-matrix designation bitmasks of every formula over the assignment space
/// of `vars` (carrier^|vars| must fit in 64 bits per matrix).
struct SpaceMasks {
  std::vector<uint32_t> varmask;            // per formula, bit per pool var
  std::vector<std::vector<uint64_t>> mask;  // mask[m][f]
  std::vector<uint64_t> full;               // per matrix
  std::vector<bool> trivial;
};

SpaceMasks compute_masks(const MatrixFamily& fam,
                         const std::vector<Formula>& formulas,
                         const std::vector<std::string>& vars);

struct CompanionBounds {
  std::vector<std::string> vars = {"p", "q", "r"};
  int depth = 2;
  int max_premises = 2;
  unsigned long long max_sequents = 25'000'000'000ULL;
  int jobs = 0;  // 0 = hardware concurrency
  size_t max_recorded = 200;
};

struct Disagreement {
  std::vector<Formula> premises;
  Formula conclusion;
  bool candidate_holds = false;
  bool base_holds = false;
  std::string witness;
};

struct EquivalenceReport {
  CompanionBounds bounds;
  unsigned long long formula_count = 0;
  unsigned long long premise_sets = 0;
  unsigned long long sequents = 0;
  unsigned long long disagreement_count = 0;
  std::vector<Disagreement> disagreements;  // canonical order, capped
  bool truncated = false;
  bool equivalent() const { return disagreement_count == 0; }
  std::string summary() const;
};

/// Bounded-exhaustive comparison of candidate-entailment against the
/// containment companion of `base` over every sequent with premises from the
/// bounded formula space (all subsets up to max_premises) and conclusions
/// from the same space.
EquivalenceReport check_companion_equivalence(const MatrixFamily& candidate,
                                              const BaseLogic& base,
                                              const CompanionBounds& bounds);

}  // namespace plonkalog
