#include "plonkalog/plonka.hpp"

#include <algorithm>
#include <numeric>

namespace plonkalog {

const std::vector<int>* DirectSystem::hom(int i, int j) const {
  auto it = homs.find({i, j});
  return it == homs.end() ? nullptr : &it->second;
}

void DirectSystem::add_identity_homs() {
  for (int i = 0; i < index.n(); ++i) {
    if (homs.count({i, i})) continue;
    std::vector<int> id(fibers[i].carrier.size());
    std::iota(id.begin(), id.end(), 0);
    homs[{i, i}] = std::move(id);
  }
}

ValidationReport validate_direct_system(const DirectSystem& x) {
  ValidationReport r = validate_semilattice(x.index);
  if (!r.ok()) return r;
  int n = x.index.n();
  if (static_cast<int>(x.fibers.size()) != n) {
    r.add("expected one fiber per index element");
    return r;
  }
  for (int i = 1; i < n; ++i)
    if (x.fibers[i].sig != x.fibers[0].sig)
      r.add("fibers '" + x.fibers[0].name + "' and '" + x.fibers[i].name +
            "' are not similar (signature mismatch)");
  // pairwise disjoint universes
  std::map<std::string, int> owner;
  for (int i = 0; i < n; ++i)
    for (const auto& e : x.fibers[i].carrier) {
      auto [it, fresh] = owner.emplace(e, i);
      if (!fresh)
        r.add("carriers of fibers '" + x.index.elements[it->second] +
              "' and '" + x.index.elements[i] + "' share element '" + e + "'");
    }
  if (!r.ok()) return r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!x.index.leq(i, j)) continue;
      const std::vector<int>* h = x.hom(i, j);
      if (!h) {
        r.add("missing homomorphism (" + x.index.elements[i] + "," +
              x.index.elements[j] + ")");
        continue;
      }
      if (h->size() != x.fibers[i].carrier.size()) {
        r.add("homomorphism (" + x.index.elements[i] + "," +
              x.index.elements[j] + ") is not total");
        continue;
      }
      if (i == j) {
        for (size_t e = 0; e < h->size(); ++e)
          if ((*h)[e] != static_cast<int>(e)) {
            r.add("f_(" + x.index.elements[i] + "," + x.index.elements[i] +
                  ") is not the identity");
            break;
          }
      }
      std::string why;
      if (!check_homomorphism(x.fibers[i], x.fibers[j], *h, &why))
        r.add("f_(" + x.index.elements[i] + "," + x.index.elements[j] +
              ") is not a homomorphism: " + why);
    }
  if (!r.ok()) return r;
  // composition: f_ik = f_jk . f_ij for i <= j <= k
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (!(x.index.leq(i, j) && x.index.leq(j, k))) continue;
        const auto &fij = *x.hom(i, j), &fjk = *x.hom(j, k), &fik = *x.hom(i, k);
        for (size_t e = 0; e < fij.size(); ++e)
          if (fik[e] != fjk[fij[e]]) {
            r.add("composition fails: f_(" + x.index.elements[i] + "," +
                  x.index.elements[k] + ")(" + x.fibers[i].carrier[e] +
                  ") != f_(" + x.index.elements[j] + "," + x.index.elements[k] +
                  ") o f_(" + x.index.elements[i] + "," + x.index.elements[j] +
                  ")");
            break;
          }
      }
  return r;
}

ValidationReport validate_r_direct_system(const RDirectSystem& x) {
  ValidationReport r = validate_direct_system(x.base);
  int n = x.base.index.n();
  if (static_cast<int>(x.filters.size()) != n) {
    r.add("expected one filter per fiber");
    return r;
  }
  for (int i = 0; i < n; ++i)
    for (int e : x.filters[i])
      if (e < 0 || e >= x.base.fibers[i].n()) {
        r.add("filter of fiber '" + x.base.index.elements[i] +
              "' leaves the carrier");
        return r;
      }
  // I+ closed under join
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (x.fiber_filter_empty(i) || x.fiber_filter_empty(j)) continue;
      int k = x.base.index.join_of(i, j);
      if (x.fiber_filter_empty(k))
        r.add("I+ is not a sub-semilattice: " + x.base.index.elements[i] +
              " v " + x.base.index.elements[j] + " = " +
              x.base.index.elements[k] + " has empty filter");
    }
  // preimage condition
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!x.base.index.leq(i, j) || x.fiber_filter_empty(j)) continue;
      const std::vector<int>* h = x.base.hom(i, j);
      if (!h || h->size() != x.base.fibers[i].carrier.size()) continue;
      std::vector<int> preimage;
      for (size_t e = 0; e < h->size(); ++e)
        if (std::binary_search(x.filters[j].begin(), x.filters[j].end(),
                               (*h)[e]))
          preimage.push_back(static_cast<int>(e));
      if (preimage != x.filters[i]) {
        auto names = [&](const std::vector<int>& es, int fiber) {
          std::string s = "{";
          for (size_t k = 0; k < es.size(); ++k) {
            if (k) s += ",";
            s += x.base.fibers[fiber].carrier[es[k]];
          }
          return s + "}";
        };
        r.add("filter preimage fails for (" + x.base.index.elements[i] + "," +
              x.base.index.elements[j] + "): f^-1[F_j] = " + names(preimage, i) +
              " but F_i = " + names(x.filters[i], i));
      }
    }
  return r;
}

PlonkaSum plonka_sum(const DirectSystem& x) {
  ValidationReport r = validate_direct_system(x);
  if (!r.ok()) throw Error("invalid direct system:\n" + r.to_string());
  int n = x.index.n();
  PlonkaSum out;
  std::vector<int> offset(n, 0);
  std::vector<std::string> carrier;
  for (int i = 0; i < n; ++i) {
    offset[i] = static_cast<int>(carrier.size());
    for (const auto& e : x.fibers[i].carrier) {
      carrier.push_back(e);
      out.element_fiber.push_back(i);
    }
  }
  const Signature& sig = x.fibers[0].sig;
  size_t total_n = carrier.size();
  std::vector<std::vector<int>> tables(sig.symbols.size());
  std::vector<int> args(8), pushed(8);
  for (size_t s = 0; s < sig.symbols.size(); ++s) {
    int arity = sig.symbols[s].arity;
    size_t total = 1;
    for (int k = 0; k < arity; ++k) total *= total_n;
    tables[s].resize(total);
    for (size_t flat = 0; flat < total; ++flat) {
      size_t rest = flat;
      for (int k = arity - 1; k >= 0; --k) {
        args[k] = static_cast<int>(rest % total_n);
        rest /= total_n;
      }
      int j = out.element_fiber[args[0]];
      for (int k = 1; k < arity; ++k)
        j = x.index.join_of(j, out.element_fiber[args[k]]);
      for (int k = 0; k < arity; ++k) {
        int fi = out.element_fiber[args[k]];
        pushed[k] = (*x.hom(fi, j))[args[k] - offset[fi]];
      }
      tables[s][flat] =
          offset[j] +
          x.fibers[j].apply(static_cast<int>(s), std::span(pushed.data(), arity));
    }
  }
  std::string name = "Pl(";
  for (int i = 0; i < n; ++i) {
    if (i) name += ",";
    name += x.fibers[i].name;
  }
  name += ")";
  out.algebra =
      FiniteAlgebra::make(name, sig, std::move(carrier), std::move(tables));
  return out;
}

FiberedMatrix plonka_sum(const RDirectSystem& x) {
  ValidationReport r = validate_r_direct_system(x);
  if (!r.ok()) throw Error("invalid r-direct system:\n" + r.to_string());
  PlonkaSum sum = plonka_sum(x.base);
  std::vector<std::string> filter;
  for (int i = 0; i < x.base.index.n(); ++i)
    for (int e : x.filters[i]) filter.push_back(x.base.fibers[i].carrier[e]);
  FiberedMatrix fm{LogicalMatrix::make(sum.algebra.name, sum.algebra, filter),
                   std::move(sum.element_fiber), x};
  return fm;
}

namespace {

int fiber_index_impl(const FiberedMatrix& fm,
                     const std::map<std::string, int>& asg,
                     const std::set<std::string>& vars) {
  if (vars.empty())
    throw Error("fiber index undefined: the formula set has no variables");
  int idx = -1;
  for (const auto& v : vars) {
    auto it = asg.find(v);
    if (it == asg.end())
      throw Error("fiber index: variable '" + v + "' is unassigned");
    if (it->second < 0 ||
        it->second >= static_cast<int>(fm.element_fiber.size()))
      throw Error("fiber index: assignment leaves the sum carrier");
    int f = fm.element_fiber[it->second];
    idx = idx < 0 ? f : fm.system.base.index.join_of(idx, f);
  }
  return idx;
}

}  // namespace

int fiber_index(const FiberedMatrix& fm, const std::map<std::string, int>& asg,
                const std::vector<Formula>& gamma) {
  return fiber_index_impl(fm, asg, vars_of(gamma));
}

int fiber_index(const FiberedMatrix& fm, const std::map<std::string, int>& asg,
                const Formula& phi) {
  return fiber_index_impl(fm, asg, vars_of(phi));
}

RDirectSystem decompose(const FiniteAlgebra& a, const Formula& star,
                        const std::vector<int>* filter) {
  PartitionCheck pc = check_partition_function(a, star);
  if (!pc.ok)
    throw Error("'" + print_formula(star) +
                "' is not a partition function of '" + a.name + "': axiom " +
                pc.failed_axiom + " fails");
  int n = a.n();
  // a.b via the star term
  auto dot = [&](int ia, int ib) {
    std::map<std::string, int> env{{"x", ia}, {"y", ib}};
    return evaluate(a, star, env);
  };
  // Components: a ~ b iff a.b = a and b.a = b.
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> members;  // element indices, carrier order
  for (int e = 0; e < n; ++e) {
    if (comp[e] >= 0) continue;
    int c = static_cast<int>(members.size());
    members.push_back({});
    for (int f = e; f < n; ++f) {
      if (comp[f] >= 0) continue;
      if (dot(e, f) == e && dot(f, e) == f) {
        comp[f] = c;
        members[c].push_back(f);
      }
    }
  }
  int nf = static_cast<int>(members.size());
  // Order components by least element (components were discovered in carrier
  // order, so they already are).
  Semilattice idx;
  for (int c = 0; c < nf; ++c) idx.elements.push_back(a.carrier[members[c][0]]);
  idx.join.assign(static_cast<size_t>(nf) * nf, -1);
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < nf; ++j) {
      int v = dot(members[i][0], members[j][0]);  // lands in the join fiber
      idx.join[i * nf + j] = comp[v];
    }
  ValidationReport sr = validate_semilattice(idx);
  if (!sr.ok())
    throw Error("internal: induced index is not a semilattice:\n" +
                sr.to_string());

  RDirectSystem out;
  out.base.index = idx;
  // Fibers as subalgebras with original element names.
  for (int c = 0; c < nf; ++c) {
    std::vector<int> global_of_local = members[c];
    std::vector<int> local_of_global(n, -1);
    for (size_t l = 0; l < global_of_local.size(); ++l)
      local_of_global[global_of_local[l]] = static_cast<int>(l);
    std::vector<std::string> carrier;
    for (int g : global_of_local) carrier.push_back(a.carrier[g]);
    std::vector<std::vector<int>> tables(a.sig.symbols.size());
    std::vector<int> args(8);
    size_t m = carrier.size();
    for (size_t s = 0; s < a.sig.symbols.size(); ++s) {
      int arity = a.sig.symbols[s].arity;
      size_t total = 1;
      for (int k = 0; k < arity; ++k) total *= m;
      tables[s].resize(total);
      for (size_t flat = 0; flat < total; ++flat) {
        size_t rest = flat;
        for (int k = arity - 1; k >= 0; --k) {
          args[k] = global_of_local[rest % m];
          rest /= m;
        }
        int res = a.apply(static_cast<int>(s), std::span(args.data(), arity));
        if (local_of_global[res] < 0)
          throw Error("internal: component is not a subalgebra");
        tables[s][flat] = local_of_global[res];
      }
    }
    out.base.fibers.push_back(FiniteAlgebra::make(
        a.name + "/" + idx.elements[c], a.sig, carrier, tables));
  }
  // Homs f_ij(x) = x.b for the least-named b in the target fiber (independent
  // of the choice when P1-P5 hold).
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < nf; ++j) {
      if (!idx.leq(i, j)) continue;
      int b = members[j][0];
      std::vector<int> h;
      for (int g : members[i]) {
        int v = dot(g, b);
        int l = -1;
        for (size_t k = 0; k < members[j].size(); ++k)
          if (members[j][k] == v) l = static_cast<int>(k);
        if (l < 0) throw Error("internal: transition map leaves its fiber");
        h.push_back(l);
      }
      out.base.homs[{i, j}] = std::move(h);
    }
  // Filters F_i = F | A_i.
  out.filters.resize(nf);
  if (filter) {
    for (int g : *filter) {
      int c = comp[g];
      int l = -1;
      for (size_t k = 0; k < members[c].size(); ++k)
        if (members[c][k] == g) l = static_cast<int>(k);
      out.filters[c].push_back(l);
    }
    for (auto& f : out.filters) std::sort(f.begin(), f.end());
  }
  ValidationReport dr = validate_direct_system(out.base);
  if (!dr.ok())
    throw Error("internal: decomposition is not a direct system:\n" +
                dr.to_string());
  return out;
}

RDirectSystem decompose(const LogicalMatrix& m, const Formula& star) {
  return decompose(m.algebra, star, &m.filter);
}

bool check_regular_identity_preservation(const DirectSystem& x,
                                         const Identity& e) {
  if (!is_regular_identity(e))
    throw Error("identity '" + print_formula(e.lhs) + " = " +
                print_formula(e.rhs) + "' is not regular");
  for (const auto& f : x.fibers)
    if (!check_identity(f, e).holds)
      throw Error("identity does not hold in fiber '" + f.name + "'");
  return check_identity(plonka_sum(x).algebra, e).holds;
}

std::vector<Formula> find_partition_functions(const FiniteAlgebra& a,
                                              int max_depth) {
  // Binary terms in x, y with both variables really occurring.
  std::vector<Formula> level = {Formula::var("x"), Formula::var("y")};
  std::vector<Formula> all = level;
  for (int d = 1; d <= max_depth; ++d) {
    std::vector<Formula> next;
    for (const auto& g : a.sig.symbols) {
      std::vector<int> pick(g.arity, 0);
      while (true) {
        int maxd = 0;
        std::vector<Formula> args;
        for (int k = 0; k < g.arity; ++k) {
          args.push_back(all[pick[k]]);
          maxd = std::max(maxd, all[pick[k]].depth());
        }
        if (maxd == d - 1) next.push_back(Formula::app(g.name, args));
        int k = g.arity - 1;
        for (; k >= 0; --k) {
          if (++pick[k] < static_cast<int>(all.size())) break;
          pick[k] = 0;
        }
        if (k < 0) break;
      }
    }
    all.insert(all.end(), next.begin(), next.end());
  }
  std::vector<Formula> found;
  for (const auto& t : all) {
    if (vars_of(t) != std::set<std::string>{"x", "y"}) continue;
    if (check_partition_function(a, t).ok) found.push_back(t);
  }
  return found;
}

FiniteAlgebra prefix_elements(const FiniteAlgebra& a,
                              const std::string& prefix) {
  std::vector<std::string> names;
  for (const auto& e : a.carrier) names.push_back(prefix + "." + e);
  return rename_elements(a, names);
}

LogicalMatrix strip_fiber_prefixes(const FiberedMatrix& fm) {
  const FiniteAlgebra& a = fm.matrix.algebra;
  std::vector<std::string> stripped;
  for (size_t e = 0; e < a.carrier.size(); ++e) {
    const std::string& idx =
        fm.system.base.index.elements[fm.element_fiber[e]];
    const std::string& name = a.carrier[e];
    if (name.size() > idx.size() + 1 && name.compare(0, idx.size(), idx) == 0 &&
        name[idx.size()] == '.')
      stripped.push_back(name.substr(idx.size() + 1));
    else
      stripped.push_back(name);
  }
  std::vector<std::string> sorted = stripped;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return fm.matrix;  // collision: keep qualified names
  FiniteAlgebra renamed = rename_elements(a, stripped);
  std::vector<std::string> filter;
  for (int e : fm.matrix.filter) filter.push_back(stripped[e]);
  return LogicalMatrix::make(fm.matrix.name, renamed, filter);
}

}  // namespace plonkalog
