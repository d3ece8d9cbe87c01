#pragma once

#include "plonkalog/algebra.hpp"

namespace plonkalog {

struct LogicalMatrix {
  std::string name;
  FiniteAlgebra algebra;
  std::vector<int> filter;  // sorted element indices

  static LogicalMatrix make(std::string name, FiniteAlgebra algebra,
                            const std::vector<std::string>& filter_names);
  bool designated(int e) const;
  std::vector<std::string> filter_names() const;
};

bool is_trivial_matrix(const LogicalMatrix& m);
bool matrices_equal(const LogicalMatrix& a, const LogicalMatrix& b);

struct MatrixFamily {
  std::string name;
  std::vector<LogicalMatrix> matrices;

  static MatrixFamily make(std::string name,
                           std::vector<LogicalMatrix> matrices);
  static MatrixFamily single(const LogicalMatrix& m);
  const Signature& sig() const { return matrices.front().algebra.sig; }
};

/// Exhaustive matrix consequence. Quantifies over assignments of
/// vars(premises + conclusion) only.
bool entails(const MatrixFamily& fam, const std::vector<Formula>& premises,
             const Formula& conclusion);
bool entails(const LogicalMatrix& m, const std::vector<Formula>& premises,
             const Formula& conclusion);

struct Countermodel {
  std::string matrix;
  std::map<std::string, std::string> assignment;
};

/// First countermodel in (matrix declaration order, lexicographic assignment
/// over sorted variable names with carrier order) order.
std::optional<Countermodel> find_countermodel(const MatrixFamily& fam,
                                              const std::vector<Formula>& premises,
                                              const Formula& conclusion);

/// Sigma must use exactly one variable. True iff sigma entails a fresh
/// variable; substitution invariance lifts this to all instances.
bool is_antitheorem(const MatrixFamily& fam, const std::vector<Formula>& sigma);

struct RuleWitness {
  size_t rule_index = 0;
  Countermodel cm;
};

/// Rules read as schemas closed under assignments of their variables.
bool is_model_of(const LogicalMatrix& m, const std::vector<Sequent>& rules,
                 RuleWitness* witness = nullptr);

}  // namespace plonkalog
