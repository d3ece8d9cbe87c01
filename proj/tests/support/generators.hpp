#pragma once

// Seeded random generators for property tests.

#include <random>
#include <string>
#include <vector>

#include "plonkalog/algebra.hpp"

namespace gens {

using namespace plonkalog;
using Rng = std::mt19937_64;

inline int pick(Rng& rng, int n) {
  return static_cast<int>(rng() % static_cast<unsigned long long>(n));
}

inline Formula random_formula(Rng& rng, const Signature& sig,
                              const std::vector<std::string>& vars,
                              int max_depth) {
  if (max_depth == 0 || pick(rng, 3) == 0)
    return Formula::var(vars[pick(rng, static_cast<int>(vars.size()))]);
  const auto& sym = sig.symbols[pick(rng, static_cast<int>(sig.symbols.size()))];
  std::vector<Formula> args;
  for (int i = 0; i < sym.arity; ++i)
    args.push_back(random_formula(rng, sig, vars, max_depth - 1));
  return Formula::app(sym.name, std::move(args));
}

inline Substitution random_substitution(Rng& rng, const Signature& sig,
                                        const std::vector<std::string>& vars,
                                        int max_depth) {
  Substitution s;
  for (const auto& v : vars)
    if (pick(rng, 2) == 0)
      s.emplace(v, random_formula(rng, sig, vars, max_depth));
  return s;
}

// A random algebra over {f/2 commutative, g/1}. f is symmetric by
// construction, so x f y = y f x holds in every generated algebra.
inline FiniteAlgebra random_commutative_algebra(Rng& rng, int n,
                                                const std::string& name,
                                                char element_tag) {
  Signature sig = Signature::make({{"f", 2}, {"g", 1}});
  std::vector<std::string> carrier;
  for (int i = 0; i < n; ++i)
    carrier.push_back(std::string(1, element_tag) + std::to_string(i));
  std::vector<int> f_table(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      int v = pick(rng, n);
      f_table[i * n + j] = v;
      f_table[j * n + i] = v;
    }
  std::vector<int> g_table(n);
  for (int i = 0; i < n; ++i) g_table[i] = pick(rng, n);
  return FiniteAlgebra::make(name, sig, carrier, {f_table, g_table});
}

// All homomorphisms between two small algebras, by exhaustive search.
inline std::vector<std::vector<int>> all_homomorphisms(const FiniteAlgebra& a,
                                                       const FiniteAlgebra& b) {
  std::vector<std::vector<int>> out;
  std::vector<int> map(a.carrier.size(), 0);
  while (true) {
    if (check_homomorphism(a, b, map)) out.push_back(map);
    int i = static_cast<int>(map.size()) - 1;
    for (; i >= 0; --i) {
      if (++map[i] < b.n()) break;
      map[i] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

}  // namespace gens
