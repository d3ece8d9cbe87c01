#pragma once

// Test-only oracles, deliberately independent of the library's code paths:
// different enumeration orders, different matching logic.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plonkalog/algebra.hpp"
#include "plonkalog/hilbert.hpp"

namespace oracles {

using namespace plonkalog;

// Independent bottom-up evaluator (no shared code with evaluate()).
inline int eval2(const FiniteAlgebra& a, const Formula& f,
                 const std::map<std::string, int>& env) {
  if (f.is_var()) return env.at(f.head());
  std::vector<int> vals;
  for (const auto& arg : f.args()) vals.push_back(eval2(a, arg, env));
  size_t flat = 0;
  for (int v : vals) flat = flat * a.carrier.size() + static_cast<size_t>(v);
  return a.tables[a.symbol_index(f.head())][flat];
}

// Identity check enumerating assignments in reverse lexicographic order.
inline bool identity_holds_reversed(const FiniteAlgebra& a, const Identity& e) {
  std::set<std::string> vs = vars_of(e.lhs);
  for (const auto& v : vars_of(e.rhs)) vs.insert(v);
  std::vector<std::string> vars(vs.rbegin(), vs.rend());
  std::vector<int> asg(vars.size(), a.n() - 1);
  while (true) {
    std::map<std::string, int> env;
    for (size_t i = 0; i < vars.size(); ++i) env[vars[i]] = asg[i];
    if (eval2(a, e.lhs, env) != eval2(a, e.rhs, env)) return false;
    int i = static_cast<int>(vars.size()) - 1;
    for (; i >= 0; --i) {
      if (--asg[i] >= 0) break;
      asg[i] = a.n() - 1;
    }
    if (i < 0) return true;
  }
}

inline void all_subterms(const Formula& f, std::vector<Formula>& out) {
  out.push_back(f);
  for (const auto& a : f.args()) all_subterms(a, out);
}

// Brute-force matcher: tries every assignment of pattern variables to
// subterms of the target and checks by substitution.
inline std::optional<Substitution> brute_force_match(const Formula& pattern,
                                                     const Formula& target) {
  std::set<std::string> vs = vars_of(pattern);
  std::vector<std::string> vars(vs.begin(), vs.end());
  std::vector<Formula> subs;
  all_subterms(target, subs);
  std::vector<size_t> pick(vars.size(), 0);
  while (true) {
    Substitution s;
    for (size_t i = 0; i < vars.size(); ++i) s.emplace(vars[i], subs[pick[i]]);
    if (substitute(pattern, s) == target) return s;
    int i = static_cast<int>(vars.size()) - 1;
    for (; i >= 0; --i) {
      if (++pick[i] < subs.size()) break;
      pick[i] = 0;
    }
    if (i < 0) return std::nullopt;
  }
}

// Independent step-by-step derivation verifier. Shares no matching logic
// with check_derivation: instances are verified by substitute-and-compare
// against substitutions recovered with brute_force_match on a paired term.
inline bool reverify_derivation(const Calculus& c,
                                const std::vector<Formula>& premises,
                                const Derivation& d) {
  for (size_t i = 0; i < d.steps.size(); ++i) {
    const auto& st = d.steps[i];
    const auto& j = st.just;
    for (int f : j.from)
      if (f < 0 || f >= static_cast<int>(i)) return false;
    switch (j.kind) {
      case Justification::Kind::Premise: {
        bool found = false;
        for (const auto& p : premises)
          if (p == st.formula) found = true;
        if (!found) return false;
        break;
      }
      case Justification::Kind::RuleApp: {
        const Rule* rule = c.find_rule(j.rule);
        if (!rule) {
          const RuleSchema* s = c.find_schema(j.rule);
          if (s && s->pattern) rule = &*s->pattern;
        }
        if (!rule) return false;
        if (j.from.size() != rule->premises.size()) return false;
        // Recover candidate substitutions by brute force against each cited
        // formula plus the conclusion, then check all parts at once.
        std::vector<Formula> pats = rule->premises;
        pats.push_back(rule->conclusion);
        std::vector<Formula> tgts;
        for (int f : j.from) tgts.push_back(d.steps[f].formula);
        tgts.push_back(st.formula);
        // Collect substitution candidates from every part and intersect by
        // testing: a valid instance must make every part match.
        bool ok = false;
        for (size_t part = 0; part < pats.size() && !ok; ++part) {
          auto s0 = brute_force_match(pats[part], tgts[part]);
          if (!s0) continue;
          // Extend over remaining variables by brute force over subterms of
          // all targets.
          std::set<std::string> vs;
          for (const auto& p : pats)
            for (const auto& v : vars_of(p)) vs.insert(v);
          std::vector<std::string> missing;
          for (const auto& v : vs)
            if (!s0->count(v)) missing.push_back(v);
          std::vector<Formula> pool;
          for (const auto& t : tgts) all_subterms(t, pool);
          std::vector<size_t> pick(missing.size(), 0);
          while (true) {
            Substitution s = *s0;
            for (size_t k = 0; k < missing.size(); ++k)
              s.emplace(missing[k], pool[pick[k]]);
            bool all = true;
            for (size_t k = 0; k < pats.size(); ++k)
              if (substitute(pats[k], s) != tgts[k]) {
                all = false;
                break;
              }
            if (all) {
              if (j.subst) {
                // Explicit substitutions must themselves be the instance.
                bool exact = true;
                for (size_t k = 0; k < pats.size(); ++k)
                  if (substitute(pats[k], *j.subst) != tgts[k]) exact = false;
                ok = exact;
              } else {
                ok = true;
              }
              break;
            }
            if (missing.empty()) break;
            int k = static_cast<int>(missing.size()) - 1;
            for (; k >= 0; --k) {
              if (++pick[k] < pool.size()) break;
              pick[k] = 0;
            }
            if (k < 0) break;
          }
        }
        if (!ok) return false;
        break;
      }
      case Justification::Kind::RewriteApp: {
        const RuleSchema* s = c.find_schema(j.rule);
        if (!s || s->kind != SchemaKind::Rewrite) return false;
        if (j.from.size() != 1) return false;
        const Formula& src = d.steps[j.from[0]].formula;
        // Recompute the subterm by walking the path manually.
        const Formula* cur = &src;
        bool bad = false;
        for (int step : j.path) {
          if (cur->is_var() || step < 0 ||
              step >= static_cast<int>(cur->args().size())) {
            bad = true;
            break;
          }
          cur = &cur->args()[step];
        }
        if (bad) return false;
        bool ok = false;
        for (auto [from_side, to_side] :
             {std::pair(s->equation->lhs, s->equation->rhs),
              std::pair(s->equation->rhs, s->equation->lhs)}) {
          auto b = brute_force_match(from_side, *cur);
          if (!b) continue;
          if (replace_at(src, j.path, substitute(to_side, *b)) == st.formula)
            ok = true;
        }
        if (!ok) return false;
        break;
      }
    }
  }
  return true;
}

}  // namespace oracles
