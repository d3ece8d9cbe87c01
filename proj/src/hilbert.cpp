#include "plonkalog/hilbert.hpp"

#include <algorithm>
#include <map>

namespace plonkalog {

std::string to_string(SchemaKind k) {
  switch (k) {
    case SchemaKind::AxiomGuard: return "axiomguard";
    case SchemaKind::PremiseSplice: return "splice";
    case SchemaKind::Antitheorem: return "explosion";
    case SchemaKind::Rewrite: return "rewrite";
  }
  return "?";
}

bool RuleSchema::operator==(const RuleSchema& o) const {
  if (kind != o.kind || name != o.name) return false;
  if (pattern.has_value() != o.pattern.has_value()) return false;
  if (pattern && !(*pattern == *o.pattern)) return false;
  if (equation.has_value() != o.equation.has_value()) return false;
  if (equation && !(equation->lhs == o.equation->lhs &&
                    equation->rhs == o.equation->rhs))
    return false;
  return true;
}

const Rule* Calculus::find_rule(std::string_view n) const {
  for (const auto& r : rules)
    if (r.name == n) return &r;
  return nullptr;
}

const RuleSchema* Calculus::find_schema(std::string_view n) const {
  for (const auto& s : schemas)
    if (s.name == n) return &s;
  return nullptr;
}

std::vector<Sequent> Calculus::pattern_sequents() const {
  std::vector<Sequent> out;
  for (const auto& r : rules)
    out.push_back({normalize_set(r.premises), r.conclusion});
  for (const auto& s : schemas)
    if (s.pattern)
      out.push_back({normalize_set(s.pattern->premises), s.pattern->conclusion});
  return out;
}

bool calculi_equal(const Calculus& a, const Calculus& b) {
  return a.sig == b.sig && a.rules == b.rules && a.schemas == b.schemas;
}

namespace {

// Matches each premise pattern against its cited formula and the conclusion
// pattern against the step formula, accumulating one consistent binding.
bool match_rule_instance(const Rule& r, const std::vector<Formula>& cited,
                         const Formula& conclusion, Substitution& binding) {
  if (cited.size() != r.premises.size()) return false;
  for (size_t i = 0; i < cited.size(); ++i)
    if (!match_into(r.premises[i], cited[i], binding)) return false;
  return match_into(r.conclusion, conclusion, binding);
}

}  // namespace

DerivationCheck check_derivation(const Calculus& c,
                                 const std::vector<Formula>& premises,
                                 const Derivation& d) {
  std::vector<Formula> gamma = normalize_set(premises);
  auto invalid = [](int step_1based, std::string why) {
    return DerivationCheck{false, step_1based, std::move(why)};
  };
  for (size_t i = 0; i < d.steps.size(); ++i) {
    const DerivationStep& st = d.steps[i];
    const int no = static_cast<int>(i) + 1;
    std::string why;
    if (!well_formed(st.formula, c.sig, &why))
      return invalid(no, "step formula is not over the calculus signature: " + why);
    const Justification& j = st.just;
    for (int f : j.from)
      if (f < 0 || f >= static_cast<int>(i))
        return invalid(no, "justification cites step " + std::to_string(f + 1) +
                               ", which is not an earlier step");
    switch (j.kind) {
      case Justification::Kind::Premise: {
        if (!set_contains(gamma, st.formula))
          return invalid(no, "formula is not among the premises");
        break;
      }
      case Justification::Kind::RuleApp: {
        const Rule* rule = c.find_rule(j.rule);
        if (!rule) {
          const RuleSchema* s = c.find_schema(j.rule);
          if (s && s->pattern) rule = &*s->pattern;
        }
        if (!rule) return invalid(no, "unknown rule '" + j.rule + "'");
        if (j.from.size() != rule->premises.size())
          return invalid(no, "rule '" + j.rule + "' takes " +
                                 std::to_string(rule->premises.size()) +
                                 " premise(s), " +
                                 std::to_string(j.from.size()) + " cited");
        std::vector<Formula> cited;
        for (int f : j.from) cited.push_back(d.steps[f].formula);
        if (j.subst) {
          for (size_t k = 0; k < cited.size(); ++k)
            if (substitute(rule->premises[k], *j.subst) != cited[k])
              return invalid(no, "cited step " + std::to_string(j.from[k] + 1) +
                                     " is not the stated instance of premise " +
                                     std::to_string(k + 1) + " of '" + j.rule +
                                     "'");
          if (substitute(rule->conclusion, *j.subst) != st.formula)
            return invalid(no, "step formula is not the stated instance of the "
                               "conclusion of '" + j.rule + "'");
        } else {
          Substitution binding;
          if (!match_rule_instance(*rule, cited, st.formula, binding))
            return invalid(no, "cited steps do not form an instance of '" +
                                   j.rule + "'");
        }
        break;
      }
      case Justification::Kind::RewriteApp: {
        const RuleSchema* s = c.find_schema(j.rule);
        if (!s || s->kind != SchemaKind::Rewrite || !s->equation)
          return invalid(no, "unknown rewrite schema '" + j.rule + "'");
        if (j.from.size() != 1)
          return invalid(no, "a rewrite step cites exactly one earlier step");
        const Formula& src = d.steps[j.from[0]].formula;
        const Formula* sub;
        try {
          sub = &subformula_at(src, j.path);
        } catch (const Error&) {
          return invalid(no, "rewrite position is not a position of the cited "
                             "formula");
        }
        bool ok = false;
        for (const auto& [from_side, to_side] :
             {std::pair(s->equation->lhs, s->equation->rhs),
              std::pair(s->equation->rhs, s->equation->lhs)}) {
          Substitution b;
          if (!match_into(from_side, *sub, b)) continue;
          if (replace_at(src, j.path, substitute(to_side, b)) == st.formula) {
            ok = true;
            break;
          }
        }
        if (!ok)
          return invalid(no, "step formula is not a one-step '" + j.rule +
                                 "' rewrite of the cited formula at the given "
                                 "position");
        break;
      }
    }
  }
  return DerivationCheck{true, 0, ""};
}

namespace {

struct SearchFact {
  Formula formula;
  Justification just;
};

// Enumerates matches of rule premises against known facts in index order.
void match_premises(const Rule& r, size_t premise_idx, Substitution binding,
                    std::vector<int>& chosen, const std::vector<SearchFact>& facts,
                    size_t usable_facts,
                    const std::function<void(const Substitution&,
                                             const std::vector<int>&)>& emit) {
  if (premise_idx == r.premises.size()) {
    emit(binding, chosen);
    return;
  }
  for (size_t f = 0; f < usable_facts; ++f) {
    Substitution b = binding;
    if (!match_into(r.premises[premise_idx], facts[f].formula, b)) continue;
    chosen.push_back(static_cast<int>(f));
    match_premises(r, premise_idx + 1, std::move(b), chosen, facts,
                   usable_facts, emit);
    chosen.pop_back();
  }
}

}  // namespace

std::optional<Derivation> derive_bounded(const Calculus& c,
                                         const std::vector<Formula>& premises,
                                         const Formula& goal,
                                         const SearchBounds& bounds) {
  std::string why;
  for (const auto& p : premises)
    if (!well_formed(p, c.sig, &why)) throw Error("bad premise: " + why);
  if (!well_formed(goal, c.sig, &why)) throw Error("bad goal: " + why);

  std::vector<SearchFact> facts;
  std::map<Formula, int, FormulaLess> known;
  auto add = [&](Formula f, Justification j) -> bool {
    if (f.depth() > bounds.max_formula_depth) return false;
    if (known.count(f)) return false;
    known.emplace(f, static_cast<int>(facts.size()));
    facts.push_back({std::move(f), std::move(j)});
    return true;
  };
  std::vector<Formula> gamma = normalize_set(premises);
  for (const auto& g : gamma)
    add(g, Justification{Justification::Kind::Premise, "", {}, {}, {}});

  // Schema and axiom variables are instantiated from the closed subformula
  // universe of the premises and the goal.
  FormulaSet universe_set;
  for (const auto& g : gamma) collect_subformulas(g, universe_set);
  collect_subformulas(goal, universe_set);
  std::vector<Formula> universe(universe_set.begin(), universe_set.end());

  // Pattern rules, schemas included; H4-style conclusion-only variables are
  // instantiated with the goal.
  std::vector<const Rule*> rules;
  for (const auto& r : c.rules) rules.push_back(&r);
  for (const auto& s : c.schemas)
    if (s.pattern) rules.push_back(&*s.pattern);

  bool goal_known = known.count(goal) != 0;
  while (!goal_known && static_cast<int>(facts.size()) < bounds.max_steps) {
    size_t frontier = facts.size();
    std::vector<std::pair<Formula, Justification>> fresh;
    for (const Rule* r : rules) {
      if (r->is_axiom()) {
        // Goal-directed instance first, then instances over the universe.
        if (auto b = match(r->conclusion, goal))
          fresh.emplace_back(goal, Justification{Justification::Kind::RuleApp,
                                                 r->name, {}, {}, *b});
        std::set<std::string> vs = vars_of(r->conclusion);
        std::vector<std::string> vars(vs.begin(), vs.end());
        double count = 1;
        for (size_t i = 0; i < vars.size(); ++i)
          count *= static_cast<double>(universe.size());
        if (count > 4096) continue;
        std::vector<size_t> pick(vars.size(), 0);
        while (true) {
          Substitution b;
          for (size_t i = 0; i < vars.size(); ++i)
            b.emplace(vars[i], universe[pick[i]]);
          fresh.emplace_back(
              substitute(r->conclusion, b),
              Justification{Justification::Kind::RuleApp, r->name, {}, {}, b});
          int i = static_cast<int>(vars.size()) - 1;
          for (; i >= 0; --i) {
            if (++pick[i] < universe.size()) break;
            pick[i] = 0;
          }
          if (i < 0) break;
        }
        continue;
      }
      std::vector<int> chosen;
      match_premises(
          *r, 0, {}, chosen, facts, frontier,
          [&](const Substitution& binding, const std::vector<int>& from) {
            Substitution full = binding;
            for (const auto& v : vars_of(r->conclusion))
              if (!full.count(v)) full.emplace(v, goal);
            fresh.emplace_back(substitute(r->conclusion, full),
                               Justification{Justification::Kind::RuleApp,
                                             r->name, from, {}, full});
          });
    }
    for (const auto& s : c.schemas) {
      if (s.kind != SchemaKind::Rewrite || !s.equation) continue;
      for (size_t f = 0; f < frontier; ++f) {
        for (const auto& pos : positions_of(facts[f].formula)) {
          const Formula& sub = subformula_at(facts[f].formula, pos);
          for (const auto& [from_side, to_side] :
               {std::pair(s.equation->lhs, s.equation->rhs),
                std::pair(s.equation->rhs, s.equation->lhs)}) {
            Substitution b;
            if (!match_into(from_side, sub, b)) continue;
            fresh.emplace_back(
                replace_at(facts[f].formula, pos, substitute(to_side, b)),
                Justification{Justification::Kind::RewriteApp, s.name,
                              {static_cast<int>(f)}, pos, {}});
          }
        }
      }
    }
    bool grew = false;
    for (auto& [f, j] : fresh) {
      if (static_cast<int>(facts.size()) >= bounds.max_steps) break;
      if (add(std::move(f), std::move(j))) grew = true;
    }
    goal_known = known.count(goal) != 0;
    if (!grew) break;
  }
  if (!known.count(goal)) return std::nullopt;

  // Extract the used steps, renumbering in original derivation order.
  std::vector<bool> needed(facts.size(), false);
  std::vector<int> stack = {known.at(goal)};
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    if (needed[i]) continue;
    needed[i] = true;
    for (int f : facts[i].just.from) stack.push_back(f);
  }
  std::vector<int> new_index(facts.size(), -1);
  Derivation d;
  for (size_t i = 0; i < facts.size(); ++i) {
    if (!needed[i]) continue;
    new_index[i] = static_cast<int>(d.steps.size());
    Justification j = facts[i].just;
    for (int& f : j.from) f = new_index[f];
    d.steps.push_back({facts[i].formula, std::move(j)});
  }
  DerivationCheck chk = check_derivation(c, premises, d);
  if (!chk.ok)
    throw Error("internal: search produced an invalid derivation at step " +
                std::to_string(chk.first_invalid_step) + ": " + chk.reason);
  return d;
}

Calculus transform_to_containment(
    const Calculus& h, const Formula& star,
    const std::optional<std::vector<Formula>>& sigma) {
  if (!h.schemas.empty())
    throw Error("transform_to_containment expects a calculus with finite "
                "rules only");
  if (vars_of(star) != std::set<std::string>{"x", "y"})
    throw Error("star term must use exactly the variables x and y");
  std::string why;
  if (!well_formed(star, h.sig, &why)) throw Error("bad star term: " + why);

  Calculus out;
  out.name = h.name + "r";
  out.sig = h.sig;
  Formula x = Formula::var("x"), y = Formula::var("y");

  for (const auto& r : h.rules) {
    if (!r.is_axiom()) continue;
    std::string guard = fresh_var(vars_of(r.conclusion),
                                  {"v", "w", "u", "t", "s"});
    Rule pat{"H0[" + r.name + "]",
             {star_apply(star, Formula::var(guard), r.conclusion)},
             r.conclusion};
    out.schemas.push_back(
        {SchemaKind::AxiomGuard, pat.name, std::move(pat), std::nullopt});
  }
  out.rules.push_back({"H1", {x, y}, star_apply(star, x, y)});
  out.rules.push_back({"H2", {star_apply(star, x, y)}, x});
  for (const auto& r : h.rules) {
    if (r.is_axiom()) continue;
    for (size_t i = 0; i < r.premises.size(); ++i) {
      std::vector<Formula> prem = r.premises;
      prem[i] = star_apply(star, r.premises[i], r.conclusion);
      Rule pat{"H3[" + r.name + "," + std::to_string(i + 1) + "]",
               std::move(prem), r.conclusion};
      out.schemas.push_back(
          {SchemaKind::PremiseSplice, pat.name, std::move(pat), std::nullopt});
    }
  }
  if (sigma) {
    std::vector<Formula> s = normalize_set(*sigma);
    std::set<std::string> vs = vars_of(s);
    if (vs.size() != 1)
      throw Error("antitheorem must use exactly one variable");
    Formula alpha =
        Formula::var(fresh_var(vs, {"y", "z", "w", "v", "u", "t"}));
    Rule pat{"H4", s, alpha};
    out.schemas.push_back(
        {SchemaKind::Antitheorem, pat.name, std::move(pat), std::nullopt});
  }
  for (const auto& eq : partition_equations(h.sig, star)) {
    std::string tag = eq.name;  // P4[not] -> P4,not inside the schema name
    for (auto& ch : tag)
      if (ch == '[') ch = ',';
    tag.erase(std::remove(tag.begin(), tag.end(), ']'), tag.end());
    out.schemas.push_back(
        {SchemaKind::Rewrite, "H5[" + tag + "]", std::nullopt, eq.id});
  }
  return out;
}

}  // namespace plonkalog
