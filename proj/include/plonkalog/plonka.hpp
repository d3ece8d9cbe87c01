#pragma once

#include "plonkalog/matrix.hpp"

namespace plonkalog {

/// Semilattice-indexed family of similar algebras with transition
/// homomorphisms. Fibers are parallel to index.elements; homs[i][j] maps
/// source element indices to target element indices and must be present for
/// every pair i <= j (identities for i == i are filled at construction).
struct DirectSystem {
  Semilattice index;
  std::vector<FiniteAlgebra> fibers;
  std::map<std::pair<int, int>, std::vector<int>> homs;

  const std::vector<int>* hom(int i, int j) const;
  void add_identity_homs();
};

struct RDirectSystem {
  DirectSystem base;
  std::vector<std::vector<int>> filters;  // sorted fiber element indices

  bool fiber_filter_empty(int i) const { return filters[i].empty(); }
};

ValidationReport validate_direct_system(const DirectSystem& x);
ValidationReport validate_r_direct_system(const RDirectSystem& x);

struct PlonkaSum {
  FiniteAlgebra algebra;
  std::vector<int> element_fiber;  // global element -> fiber index
};

/// Carrier is the concatenation of fiber carriers in index order; each
/// operation pushes its arguments to the join index. Throws on invalid input.
PlonkaSum plonka_sum(const DirectSystem& x);

struct FiberedMatrix {
  LogicalMatrix matrix;
  std::vector<int> element_fiber;
  RDirectSystem system;
};

FiberedMatrix plonka_sum(const RDirectSystem& x);

/// Join of the fibers of the assigned values of vars(gamma); throws a
/// distinct error when gamma has no variables.
int fiber_index(const FiberedMatrix& fm, const std::map<std::string, int>& asg,
                const std::vector<Formula>& gamma);
int fiber_index(const FiberedMatrix& fm, const std::map<std::string, int>& asg,
                const Formula& phi);

/// Partition-function decomposition. Fibers keep their original element
/// names; semilattice indices are named after each fiber's least element in
/// carrier order. With a filter, fiber filters are the restrictions F | A_i.
/// Requires check_partition_function(a, star).ok.
RDirectSystem decompose(const FiniteAlgebra& a, const Formula& star,
                        const std::vector<int>* filter = nullptr);
RDirectSystem decompose(const LogicalMatrix& m, const Formula& star);

/// Precondition-checked wrapper around check_identity on the sum.
bool check_regular_identity_preservation(const DirectSystem& x,
                                         const Identity& e);

/// Convenience search for partition functions among binary terms in x, y up
/// to the given depth (both variables really occurring).
std::vector<Formula> find_partition_functions(const FiniteAlgebra& a,
                                              int max_depth = 2);

/// Renames "prefix.element" sum elements back to "element" when the stripped
/// names are globally unique; otherwise returns the input unchanged.
LogicalMatrix strip_fiber_prefixes(const FiberedMatrix& fm);

FiniteAlgebra prefix_elements(const FiniteAlgebra& a, const std::string& prefix);

}  // namespace plonkalog
