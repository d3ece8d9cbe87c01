#include "plonkalog/containment.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>

namespace plonkalog {

AntitheoremMode antitheorem_mode_from_string(const std::string& s) {
  if (s == "semantic") return AntitheoremMode::Semantic;
  if (s == "instance") return AntitheoremMode::Instance;
  if (s == "literal") return AntitheoremMode::Literal;
  if (s == "none") return AntitheoremMode::None;
  throw Error("unknown antitheorem reading '" + s +
              "' (expected semantic, instance, literal or none)");
}

std::string to_string(AntitheoremMode m) {
  switch (m) {
    case AntitheoremMode::Semantic: return "semantic";
    case AntitheoremMode::Instance: return "instance";
    case AntitheoremMode::Literal: return "literal";
    case AntitheoremMode::None: return "none";
  }
  return "?";
}

BaseLogic BaseLogic::make(MatrixFamily family,
                          std::optional<std::vector<Formula>> sigma,
                          std::optional<AntitheoremMode> mode) {
  BaseLogic L;
  L.family = std::move(family);
  if (sigma) {
    *sigma = normalize_set(std::move(*sigma));
    if (!is_antitheorem(L.family, *sigma))
      throw Error("declared antitheorem is not an antitheorem of the family");
    L.antitheorem = std::move(*sigma);
    L.mode = mode.value_or(AntitheoremMode::Semantic);
  } else {
    L.mode = mode.value_or(AntitheoremMode::None);
  }
  if ((L.mode == AntitheoremMode::Instance ||
       L.mode == AntitheoremMode::Literal) &&
      !L.antitheorem)
    throw Error("antitheorem reading '" + to_string(L.mode) +
                "' needs an explicit antitheorem");
  return L;
}

namespace {

bool instance_clause(const std::vector<Formula>& sigma,
                     const std::vector<Formula>& premises) {
  // Every Sigma formula contains x (constant-free signature), so matching any
  // one of them against a premise determines the instance.
  const Formula& probe = sigma.front();
  for (const auto& g : premises) {
    auto binding = match(probe, g);
    if (!binding) continue;
    bool all = true;
    for (const auto& s : sigma)
      if (!set_contains(premises, substitute(s, *binding))) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

}  // namespace

bool antitheorem_clause(const BaseLogic& base,
                        const std::vector<Formula>& premises) {
  switch (base.mode) {
    case AntitheoremMode::None:
      return false;
    case AntitheoremMode::Semantic: {
      Formula y = Formula::var(
          fresh_var(vars_of(premises), {"y", "z", "w", "v", "u", "t", "s"}));
      return entails(base.family, premises, y);
    }
    case AntitheoremMode::Instance:
      return instance_clause(*base.antitheorem, premises);
    case AntitheoremMode::Literal:
      return std::includes(premises.begin(), premises.end(),
                           base.antitheorem->begin(), base.antitheorem->end(),
                           FormulaLess{});
  }
  return false;
}

bool containment_entails(const BaseLogic& base,
                         const std::vector<Formula>& premises,
                         const Formula& conclusion) {
  std::vector<Formula> gamma = normalize_set(premises);
  std::set<std::string> pv = vars_of(gamma), cv = vars_of(conclusion);
  bool included = std::includes(pv.begin(), pv.end(), cv.begin(), cv.end());
  if (included && entails(base.family, gamma, conclusion)) return true;
  return antitheorem_clause(base, gamma);
}

RpfCheck verify_r_partition_function(const BaseLogic& base,
                                     const Formula& star) {
  if (vars_of(star) != std::set<std::string>{"x", "y"})
    throw Error("star term must use exactly the variables x and y");
  RpfCheck c;
  Formula x = Formula::var("x"), y = Formula::var("y");
  if (!entails(base.family, {x, y}, star)) {
    c.clause = "(i)";
    c.detail = "x, y |- x*y fails";
    return c;
  }
  if (!entails(base.family, {star}, x)) {
    c.clause = "(ii)";
    c.detail = "x*y |- x fails";
    return c;
  }
  for (const auto& m : base.family.matrices)
    for (const auto& eq : partition_equations(m.algebra.sig, star)) {
      IdentityCheck ic = check_identity(m.algebra, eq.id);
      if (!ic.holds) {
        c.clause = eq.name;
        std::string asg;
        for (const auto& [v, e] : ic.counterexample)
          asg += (asg.empty() ? "" : ", ") + v + "=" + e;
        c.detail = eq.name + " fails on '" + m.algebra.name + "' at " + asg;
        return c;
      }
    }
  c.ok = true;
  return c;
}

std::vector<Formula> enumerate_formulas(const Signature& sig,
                                        const std::vector<std::string>& vars,
                                        int max_depth) {
  std::vector<Formula> all;
  for (const auto& v : vars) {
    if (!valid_variable_name(v)) throw Error("invalid variable name '" + v + "'");
    all.push_back(Formula::var(v));
  }
  for (int d = 1; d <= max_depth; ++d) {
    size_t prev_end = all.size();
    std::vector<Formula> next;
    for (const auto& g : sig.symbols) {
      std::vector<size_t> pick(g.arity, 0);
      while (true) {
        int maxd = 0;
        for (int k = 0; k < g.arity; ++k)
          maxd = std::max(maxd, all[pick[k]].depth());
        if (maxd == d - 1) {
          std::vector<Formula> args;
          args.reserve(g.arity);
          for (int k = 0; k < g.arity; ++k) args.push_back(all[pick[k]]);
          next.push_back(Formula::app(g.name, std::move(args)));
        }
        int k = g.arity - 1;
        for (; k >= 0; --k) {
          if (++pick[k] < prev_end) break;
          pick[k] = 0;
        }
        if (k < 0) break;
      }
    }
    all.insert(all.end(), next.begin(), next.end());
  }
  return all;
}

SpaceMasks compute_masks(const MatrixFamily& fam,
                         const std::vector<Formula>& formulas,
                         const std::vector<std::string>& vars) {
  if (vars.size() > 32) throw Error("variable pool too large");
  SpaceMasks sm;
  sm.varmask.resize(formulas.size());
  std::map<std::string, uint32_t> varbit;
  for (size_t i = 0; i < vars.size(); ++i) varbit[vars[i]] = 1u << i;
  for (size_t f = 0; f < formulas.size(); ++f) {
    uint32_t m = 0;
    for (const auto& v : vars_of(formulas[f])) {
      auto it = varbit.find(v);
      if (it == varbit.end())
        throw Error("formula uses variable '" + v + "' outside the pool");
      m |= it->second;
    }
    sm.varmask[f] = m;
  }
  for (const auto& mx : fam.matrices) {
    size_t n = static_cast<size_t>(mx.algebra.n());
    double space = 1;
    for (size_t i = 0; i < vars.size(); ++i) space *= static_cast<double>(n);
    if (space > 64)
      throw Error("assignment space of matrix '" + mx.name +
                  "' exceeds 64; masks unavailable");
    size_t bits = static_cast<size_t>(space);
    std::vector<uint64_t> masks(formulas.size(), 0);
    std::vector<int> asg(vars.size(), 0);
    std::unordered_map<const void*, int> memo;
    std::function<int(const Formula&)> eval = [&](const Formula& f) -> int {
      auto it = memo.find(f.id());
      if (it != memo.end()) return it->second;
      int val;
      if (f.is_var()) {
        size_t vi =
            std::find(vars.begin(), vars.end(), f.head()) - vars.begin();
        val = asg[vi];
      } else {
        int sym = mx.algebra.symbol_index(f.head());
        if (sym < 0)
          throw Error("symbol '" + f.head() + "' absent from algebra '" +
                      mx.algebra.name + "'");
        std::vector<int> a;
        a.reserve(f.args().size());
        for (const auto& arg : f.args()) a.push_back(eval(arg));
        val = mx.algebra.apply(sym, a);
      }
      memo.emplace(f.id(), val);
      return val;
    };
    for (size_t bit = 0; bit < bits; ++bit) {
      // assignment: first variable most significant (lexicographic order)
      size_t rest = bit;
      for (size_t i = vars.size(); i-- > 0;) {
        asg[i] = static_cast<int>(rest % n);
        rest /= n;
      }
      memo.clear();
      for (size_t f = 0; f < formulas.size(); ++f)
        if (mx.designated(eval(formulas[f]))) masks[f] |= 1ull << bit;
    }
    sm.mask.push_back(std::move(masks));
    sm.full.push_back(bits == 64 ? ~0ull : (1ull << bits) - 1);
    sm.trivial.push_back(is_trivial_matrix(mx));
  }
  return sm;
}

std::string EquivalenceReport::summary() const {
  std::string s = std::to_string(disagreement_count) + " disagreements / " +
                  std::to_string(sequents) + " sequents (" +
                  std::to_string(formula_count) + " formulas, " +
                  std::to_string(premise_sets) + " premise sets)";
  return s;
}

namespace {

unsigned long long binom(unsigned long long n, int k) {
  if (k < 0) return 0;
  unsigned long long r = 1;
  for (int i = 1; i <= k; ++i) {
    if (n + 1 < static_cast<unsigned long long>(i)) return 0;
    r = r * (n - i + 1) / i;
  }
  return r;
}

struct RawDisagreement {
  unsigned long long ordinal;
  std::vector<int> premise_idx;
  int conclusion_idx;
  bool candidate_holds;
  bool base_holds;
};

// Enumerates size-k index combinations whose first coordinate is `first`,
// remaining coordinates drawn from (first, n). Calls fn for each.
template <typename Fn>
void combos_with_first(int n, int k, int first, std::vector<int>& scratch,
                       Fn&& fn) {
  scratch.assign(1, first);
  if (k == 1) {
    fn(scratch);
    return;
  }
  std::vector<int> rest(k - 1);
  for (int i = 0; i < k - 1; ++i) rest[i] = first + 1 + i;
  if (rest.back() >= n) return;
  while (true) {
    scratch.assign(1, first);
    scratch.insert(scratch.end(), rest.begin(), rest.end());
    fn(scratch);
    int i = k - 2;
    while (i >= 0 && rest[i] == n - (k - 1 - i)) --i;
    if (i < 0) return;
    ++rest[i];
    for (int j = i + 1; j < k - 1; ++j) rest[j] = rest[j - 1] + 1;
  }
}

}  // namespace

EquivalenceReport check_companion_equivalence(const MatrixFamily& candidate,
                                              const BaseLogic& base,
                                              const CompanionBounds& bounds) {
  if (candidate.sig() != base.family.sig())
    throw Error("candidate and base families have different signatures");
  EquivalenceReport rep;
  rep.bounds = bounds;
  std::vector<Formula> space =
      enumerate_formulas(candidate.sig(), bounds.vars, bounds.depth);
  const int n = static_cast<int>(space.size());
  rep.formula_count = n;
  unsigned long long sets = 0;
  for (int k = 0; k <= bounds.max_premises; ++k) sets += binom(n, k);
  rep.premise_sets = sets;
  rep.sequents = sets * n;
  if (rep.sequents > bounds.max_sequents)
    throw Error("sequent space " + std::to_string(rep.sequents) +
                " exceeds the cap " + std::to_string(bounds.max_sequents));

  SpaceMasks cm = compute_masks(candidate, space, bounds.vars);
  SpaceMasks bm = compute_masks(base.family, space, bounds.vars);
  const size_t MC = candidate.matrices.size();
  const size_t MB = base.family.matrices.size();

  // Formula indices of Sigma for the literal reading; instance reading
  // resolves per premise set below.
  std::vector<int> sigma_idx;
  bool sigma_in_space = false;
  if (base.antitheorem) {
    sigma_in_space = true;
    for (const auto& s : *base.antitheorem) {
      auto it = std::find(space.begin(), space.end(), s);
      if (it == space.end()) {
        sigma_in_space = false;
        break;
      }
      sigma_idx.push_back(static_cast<int>(it - space.begin()));
    }
    std::sort(sigma_idx.begin(), sigma_idx.end());
  }

  // Premise-set ordinal layout: size 0, then size 1, then size 2 blocks by
  // first index, ... so reports are deterministic under any partitioning.
  std::vector<std::vector<unsigned long long>> block_base(bounds.max_premises + 1);
  unsigned long long running = 0;
  for (int k = 0; k <= bounds.max_premises; ++k) {
    if (k == 0) {
      block_base[0] = {running};
      running += 1;
      continue;
    }
    block_base[k].resize(n);
    for (int first = 0; first < n; ++first) {
      block_base[k][first] = running;
      running += binom(static_cast<unsigned long long>(n - 1 - first), k - 1);
    }
  }

  int jobs = bounds.jobs > 0
                 ? bounds.jobs
                 : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::vector<RawDisagreement>> found(jobs);
  std::vector<unsigned long long> counts(jobs, 0);

  auto worker = [&](int w) {
    std::vector<uint64_t> cand_and(MC), base_and(MB);
    std::vector<int> scratch;
    std::vector<RawDisagreement>& out = found[w];
    unsigned long long& count = counts[w];
    auto process = [&](const std::vector<int>& idxs,
                       unsigned long long ordinal_base,
                       unsigned long long pos_in_block) {
      for (size_t m = 0; m < MC; ++m) cand_and[m] = cm.full[m];
      for (size_t m = 0; m < MB; ++m) base_and[m] = bm.full[m];
      uint32_t gvars = 0;
      for (int i : idxs) {
        for (size_t m = 0; m < MC; ++m) cand_and[m] &= cm.mask[m][i];
        for (size_t m = 0; m < MB; ++m) base_and[m] &= bm.mask[m][i];
        gvars |= cm.varmask[i];
      }
      bool anti = false;
      switch (base.mode) {
        case AntitheoremMode::None:
          break;
        case AntitheoremMode::Semantic: {
          anti = true;
          for (size_t m = 0; m < MB; ++m)
            if (!bm.trivial[m] && base_and[m] != 0) {
              anti = false;
              break;
            }
          break;
        }
        case AntitheoremMode::Instance: {
          std::vector<Formula> gamma;
          for (int i : idxs) gamma.push_back(space[i]);
          anti = instance_clause(*base.antitheorem, normalize_set(gamma));
          break;
        }
        case AntitheoremMode::Literal:
          anti = sigma_in_space &&
                 std::includes(idxs.begin(), idxs.end(), sigma_idx.begin(),
                               sigma_idx.end());
          break;
      }
      if (anti) {
        // Base side holds for every conclusion; disagreements are exactly the
        // conclusions the candidate refutes.
        bool cand_all = true;
        for (size_t m = 0; m < MC && cand_all; ++m)
          cand_all = cand_and[m] == 0;
        if (!cand_all) {
          for (int f = 0; f < n; ++f) {
            bool c = true;
            for (size_t m = 0; m < MC; ++m)
              c = c && (cand_and[m] & ~cm.mask[m][f]) == 0;
            if (!c) {
              ++count;
              if (out.size() < bounds.max_recorded)
                out.push_back({ordinal_base + pos_in_block * n + f, idxs, f,
                               false, true});
            }
          }
        }
        return;
      }
      if (MC == 1 && MB == 1) {
        const uint64_t ca = cand_and[0], ba = base_and[0];
        const uint64_t* __restrict cmk = cm.mask[0].data();
        const uint64_t* __restrict bmk = bm.mask[0].data();
        const uint32_t* __restrict vmk = cm.varmask.data();
        for (int f = 0; f < n; ++f) {
          bool c = (ca & ~cmk[f]) == 0;
          bool b = ((vmk[f] & ~gvars) == 0) & ((ba & ~bmk[f]) == 0);
          if (c != b) {
            ++count;
            if (out.size() < bounds.max_recorded)
              out.push_back(
                  {ordinal_base + pos_in_block * n + f, idxs, f, c, b});
          }
        }
        return;
      }
      for (int f = 0; f < n; ++f) {
        bool c = true;
        for (size_t m = 0; m < MC; ++m)
          c = c && (cand_and[m] & ~cm.mask[m][f]) == 0;
        bool b = (cm.varmask[f] & ~gvars) == 0;
        for (size_t m = 0; m < MB && b; ++m)
          b = (base_and[m] & ~bm.mask[m][f]) == 0;
        if (c != b) {
          ++count;
          if (out.size() < bounds.max_recorded)
            out.push_back({ordinal_base + pos_in_block * n + f, idxs, f, c, b});
        }
      }
    };
    // size 0 handled by worker 0
    if (w == 0) process({}, block_base[0][0] * n, 0);
    for (int k = 1; k <= bounds.max_premises; ++k) {
      for (int first = w; first < n; first += jobs) {
        unsigned long long pos = 0;
        combos_with_first(n, k, first, scratch,
                          [&](const std::vector<int>& idxs) {
                            process(idxs, block_base[k][first] * n, pos);
                            ++pos;
                          });
      }
    }
  };

  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (auto& t : threads) t.join();
  }

  std::vector<RawDisagreement> all;
  for (auto& v : found) all.insert(all.end(), v.begin(), v.end());
  std::sort(all.begin(), all.end(),
            [](const RawDisagreement& a, const RawDisagreement& b) {
              return a.ordinal < b.ordinal;
            });
  for (auto& c : counts) rep.disagreement_count += c;
  if (all.size() > bounds.max_recorded) all.resize(bounds.max_recorded);
  rep.truncated = rep.disagreement_count > all.size();
  for (const auto& raw : all) {
    Disagreement d{.premises = {},
                   .conclusion = space[raw.conclusion_idx],
                   .candidate_holds = raw.candidate_holds,
                   .base_holds = raw.base_holds,
                   .witness = ""};
    for (int i : raw.premise_idx) d.premises.push_back(space[i]);
    if (!raw.candidate_holds) {
      if (auto cmw = find_countermodel(candidate, d.premises, d.conclusion))
        d.witness = "candidate countermodel in " + cmw->matrix + ": " +
                    [&] {
                      std::string s;
                      for (const auto& [v, e] : cmw->assignment)
                        s += (s.empty() ? "" : ", ") + v + "=" + e;
                      return s;
                    }();
    } else {
      if (auto cmw =
              find_countermodel(base.family, d.premises, d.conclusion))
        d.witness = "base countermodel in " + cmw->matrix + ": " +
                    [&] {
                      std::string s;
                      for (const auto& [v, e] : cmw->assignment)
                        s += (s.empty() ? "" : ", ") + v + "=" + e;
                      return s;
                    }();
      else
        d.witness = "base fails only the variable-inclusion constraint";
    }
    rep.disagreements.push_back(std::move(d));
  }
  return rep;
}

}  // namespace plonkalog
