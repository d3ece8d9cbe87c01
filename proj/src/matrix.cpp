#include "plonkalog/matrix.hpp"

#include <algorithm>

namespace plonkalog {

LogicalMatrix LogicalMatrix::make(std::string name, FiniteAlgebra algebra,
                                  const std::vector<std::string>& filter_names) {
  LogicalMatrix m;
  m.name = std::move(name);
  m.algebra = std::move(algebra);
  for (const auto& e : filter_names) {
    int i = m.algebra.element_index(e);
    if (i < 0)
      throw Error("matrix '" + m.name + "': filter element '" + e +
                  "' is not in the carrier");
    m.filter.push_back(i);
  }
  std::sort(m.filter.begin(), m.filter.end());
  m.filter.erase(std::unique(m.filter.begin(), m.filter.end()), m.filter.end());
  return m;
}

bool LogicalMatrix::designated(int e) const {
  return std::binary_search(filter.begin(), filter.end(), e);
}

std::vector<std::string> LogicalMatrix::filter_names() const {
  std::vector<std::string> out;
  for (int i : filter) out.push_back(algebra.carrier[i]);
  return out;
}

bool is_trivial_matrix(const LogicalMatrix& m) {
  return static_cast<int>(m.filter.size()) == m.algebra.n();
}

bool matrices_equal(const LogicalMatrix& a, const LogicalMatrix& b) {
  if (!algebras_equal(a.algebra, b.algebra)) return false;
  std::vector<std::string> fa = a.filter_names(), fb = b.filter_names();
  std::sort(fa.begin(), fa.end());
  std::sort(fb.begin(), fb.end());
  return fa == fb;
}

MatrixFamily MatrixFamily::make(std::string name,
                                std::vector<LogicalMatrix> matrices) {
  if (matrices.empty()) throw Error("matrix family '" + name + "' is empty");
  for (const auto& m : matrices)
    if (m.algebra.sig != matrices.front().algebra.sig)
      throw Error("matrix family '" + name + "': signature mismatch between '" +
                  matrices.front().name + "' and '" + m.name + "'");
  MatrixFamily f;
  f.name = std::move(name);
  f.matrices = std::move(matrices);
  return f;
}

MatrixFamily MatrixFamily::single(const LogicalMatrix& m) {
  return make(m.name, {m});
}

namespace {

// Walks assignments of `vars` in lexicographic order (first variable most
// significant) calling fn; stops early when fn returns false.
template <typename Fn>
void for_each_assignment(int n_elems, const std::vector<std::string>& vars,
                         Fn&& fn) {
  std::vector<int> asg(vars.size(), 0);
  std::map<std::string, int> env;
  while (true) {
    for (size_t i = 0; i < vars.size(); ++i) env[vars[i]] = asg[i];
    if (!fn(env)) return;
    int i = static_cast<int>(vars.size()) - 1;
    for (; i >= 0; --i) {
      if (++asg[i] < n_elems) break;
      asg[i] = 0;
    }
    if (i < 0) return;
  }
}

std::vector<std::string> relevant_vars(const std::vector<Formula>& premises,
                                       const Formula& conclusion) {
  std::set<std::string> vs = vars_of(premises);
  for (const auto& v : vars_of(conclusion)) vs.insert(v);
  return {vs.begin(), vs.end()};
}

void check_formulas(const MatrixFamily& fam,
                    const std::vector<Formula>& premises,
                    const Formula& conclusion) {
  std::string why;
  for (const auto& p : premises)
    if (!well_formed(p, fam.sig(), &why))
      throw Error("premise not over the family's signature: " + why);
  if (!well_formed(conclusion, fam.sig(), &why))
    throw Error("conclusion not over the family's signature: " + why);
}

std::optional<Countermodel> countermodel_in(
    const LogicalMatrix& m, const std::vector<Formula>& premises,
    const Formula& conclusion, const std::vector<std::string>& vars) {
  std::optional<Countermodel> found;
  for_each_assignment(m.algebra.n(), vars, [&](const std::map<std::string, int>& env) {
    for (const auto& p : premises)
      if (!m.designated(evaluate(m.algebra, p, env))) return true;
    if (m.designated(evaluate(m.algebra, conclusion, env))) return true;
    Countermodel cm;
    cm.matrix = m.name;
    for (const auto& [v, e] : env) cm.assignment[v] = m.algebra.carrier[e];
    found = std::move(cm);
    return false;
  });
  return found;
}

}  // namespace

bool entails(const LogicalMatrix& m, const std::vector<Formula>& premises,
             const Formula& conclusion) {
  return entails(MatrixFamily::single(m), premises, conclusion);
}

bool entails(const MatrixFamily& fam, const std::vector<Formula>& premises,
             const Formula& conclusion) {
  return !find_countermodel(fam, premises, conclusion).has_value();
}

std::optional<Countermodel> find_countermodel(
    const MatrixFamily& fam, const std::vector<Formula>& premises,
    const Formula& conclusion) {
  check_formulas(fam, premises, conclusion);
  std::vector<std::string> vars = relevant_vars(premises, conclusion);
  for (const auto& m : fam.matrices)
    if (auto cm = countermodel_in(m, premises, conclusion, vars)) return cm;
  return std::nullopt;
}

bool is_antitheorem(const MatrixFamily& fam,
                    const std::vector<Formula>& sigma) {
  std::set<std::string> vs = vars_of(sigma);
  if (vs.size() != 1)
    throw Error("antitheorem candidate must use exactly one variable, found " +
                std::to_string(vs.size()));
  Formula y = Formula::var(fresh_var(vs, {"y", "z", "w", "v", "u"}));
  return entails(fam, sigma, y);
}

bool is_model_of(const LogicalMatrix& m, const std::vector<Sequent>& rules,
                 RuleWitness* witness) {
  MatrixFamily fam = MatrixFamily::single(m);
  for (size_t i = 0; i < rules.size(); ++i) {
    if (auto cm = find_countermodel(fam, rules[i].premises, rules[i].conclusion)) {
      if (witness) {
        witness->rule_index = i;
        witness->cm = *cm;
      }
      return false;
    }
  }
  return true;
}

}  // namespace plonkalog
