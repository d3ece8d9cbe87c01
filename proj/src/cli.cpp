#include "plonkalog/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lexer.hpp"
#include "plonkalog/workspace.hpp"

namespace plonkalog {

namespace {

struct SequentText {
  std::vector<Formula> premises;
  Formula conclusion;
};

SequentText parse_sequent(const std::string& text, const Signature& sig) {
  Lexer lx(text);
  std::vector<Formula> prem;
  if (!lx.at("|-")) {
    prem.push_back(parse_formula_stream(lx, sig, Notation::standard()));
    while (lx.accept(","))
      prem.push_back(parse_formula_stream(lx, sig, Notation::standard()));
  }
  lx.expect("|-", "in sequent");
  Formula concl = parse_formula_stream(lx, sig, Notation::standard());
  if (lx.peek().type != Token::End)
    lx.fail("trailing input after sequent", lx.here());
  return {normalize_set(prem), concl};
}

std::vector<Formula> parse_formula_list_text(const std::string& text,
                                             const Signature& sig) {
  std::vector<Formula> out;
  Lexer lx(text);
  if (lx.peek().type == Token::End) return out;
  out.push_back(parse_formula_stream(lx, sig, Notation::standard()));
  while (lx.accept(","))
    out.push_back(parse_formula_stream(lx, sig, Notation::standard()));
  if (lx.peek().type != Token::End)
    lx.fail("trailing input after formula list", lx.here());
  return out;
}

std::string render_assignment(const std::map<std::string, std::string>& asg,
                              const char* sep = ", ") {
  std::string s;
  for (const auto& [v, e] : asg) {
    if (!s.empty()) s += sep;
    s += v + "=" + e;
  }
  return s;
}

struct Ctx {
  Workspace ws;
  bool porcelain = false;
  int jobs = 0;
  std::ostringstream out;
};

Workspace initial_workspace() {
  const char* dir = std::getenv("PLONKALOG_BUILTIN_DIR");
  if (!dir || !*dir) return builtins();
  Workspace ws;
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".lgc")
      files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) load_file(ws, f);
  return ws;
}

const Signature& signature_for(const Ctx& ctx, const std::string& matrix,
                               const std::string& family,
                               const std::string& algebra,
                               const std::string& calculus) {
  if (!matrix.empty()) return ctx.ws.matrix(matrix).algebra.sig;
  if (!algebra.empty()) return ctx.ws.algebra(algebra).sig;
  if (!calculus.empty()) return ctx.ws.calculus(calculus).sig;
  if (!family.empty()) {
    auto it = ctx.ws.families.find(family);
    if (it == ctx.ws.families.end()) throw Error("unknown family '" + family + "'");
    return it->second.sig();
  }
  throw Error("no signature context; pass --matrix, --family, --algebra or "
              "--calculus");
}

BaseLogic base_from_args(const Ctx& ctx, const std::string& base_name,
                         const std::string& antitheorem_name,
                         const std::string& reading) {
  MatrixFamily fam = ctx.ws.family_or_matrix(base_name);
  std::optional<std::vector<Formula>> sigma;
  if (!antitheorem_name.empty() && antitheorem_name != "none")
    sigma = ctx.ws.antitheorem(antitheorem_name);
  std::optional<AntitheoremMode> mode;
  if (!reading.empty()) mode = antitheorem_mode_from_string(reading);
  return BaseLogic::make(std::move(fam), std::move(sigma), mode);
}

int cmd_entail(Ctx& ctx, const std::string& target, const std::string& seq) {
  MatrixFamily fam = ctx.ws.family_or_matrix(target);
  SequentText s = parse_sequent(seq, fam.sig());
  auto cm = find_countermodel(fam, s.premises, s.conclusion);
  if (!cm) {
    ctx.out << (ctx.porcelain ? "holds\n" : "HOLDS\n");
    return 0;
  }
  if (ctx.porcelain)
    ctx.out << "fails\t" << cm->matrix << "\t"
            << render_assignment(cm->assignment, "\t") << "\n";
  else
    ctx.out << "FAILS: countermodel in " << cm->matrix << ": "
            << render_assignment(cm->assignment) << "\n";
  return 1;
}

int cmd_countermodel(Ctx& ctx, const std::string& target,
                     const std::string& seq) {
  MatrixFamily fam = ctx.ws.family_or_matrix(target);
  SequentText s = parse_sequent(seq, fam.sig());
  auto cm = find_countermodel(fam, s.premises, s.conclusion);
  if (!cm) {
    ctx.out << (ctx.porcelain ? "none\n" : "no countermodel: the sequent holds\n");
    return 1;
  }
  if (ctx.porcelain)
    ctx.out << cm->matrix << "\t" << render_assignment(cm->assignment, "\t")
            << "\n";
  else
    ctx.out << "countermodel in " << cm->matrix << ": "
            << render_assignment(cm->assignment) << "\n";
  return 0;
}

int cmd_companion(Ctx& ctx, const std::string& base_name,
                  const std::string& antitheorem_name,
                  const std::string& reading, const std::string& seq) {
  BaseLogic base = base_from_args(ctx, base_name, antitheorem_name, reading);
  SequentText s = parse_sequent(seq, base.family.sig());
  bool holds = containment_entails(base, s.premises, s.conclusion);
  if (ctx.porcelain)
    ctx.out << (holds ? "holds\n" : "fails\n");
  else
    ctx.out << (holds ? "HOLDS\n" : "FAILS\n");
  return holds ? 0 : 1;
}

std::string join_with(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i];
  }
  return s;
}

int cmd_plonka_sum(Ctx& ctx, const std::string& system_name, bool emit_blocks) {
  const RDirectSystem& x = ctx.ws.system(system_name);
  ValidationReport r = validate_r_direct_system(x);
  if (!r.ok()) {
    ctx.out << "invalid r-direct system:\n" << r.to_string();
    return 1;
  }
  FiberedMatrix fm = plonka_sum(x);
  LogicalMatrix m = strip_fiber_prefixes(fm);
  if (emit_blocks) {
    FiniteAlgebra a = canonical_form(m.algebra);
    a.name = system_name + "_sum_alg";
    LogicalMatrix out_m = LogicalMatrix::make(system_name + "_sum", a,
                                              m.filter_names());
    ctx.out << emit(a) << "\n" << emit(out_m);
  } else {
    ctx.out << "sum: " << m.algebra.carrier.size() << " elements, filter {"
            << join_with(m.filter_names(), ", ") << "}\n";
  }
  return 0;
}

int cmd_plonka_decompose(Ctx& ctx, const std::string& matrix_name,
                         const std::string& algebra_name,
                         const std::string& star_text, bool emit_blocks) {
  const bool use_matrix = !matrix_name.empty();
  const FiniteAlgebra& alg = use_matrix
                                 ? ctx.ws.matrix(matrix_name).algebra
                                 : ctx.ws.algebra(algebra_name);
  Formula star = parse_formula(star_text, alg.sig);
  RDirectSystem x = use_matrix
                        ? decompose(ctx.ws.matrix(matrix_name), star)
                        : decompose(alg, star, nullptr);
  std::string name = use_matrix ? matrix_name : algebra_name;
  if (emit_blocks) {
    ctx.out << emit_system(x, name + "_dec");
  } else {
    ctx.out << "fibers:";
    for (int i = 0; i < x.base.index.n(); ++i) {
      ctx.out << " " << x.base.index.elements[i] << "{";
      for (size_t e = 0; e < x.base.fibers[i].carrier.size(); ++e)
        ctx.out << (e ? "," : "") << x.base.fibers[i].carrier[e];
      ctx.out << "}";
    }
    ctx.out << "\n";
  }
  ValidationReport r = validate_r_direct_system(x);
  if (!r.ok()) {
    ctx.out << "note: decomposition is a direct system but violates the "
               "r-conditions:\n"
            << r.to_string();
    return use_matrix ? 1 : 0;  // algebra-only decompositions carry no filters
  }
  return 0;
}

int cmd_validate(Ctx& ctx, const std::string& name) {
  auto report = [&ctx](const ValidationReport& r) {
    ctx.out << (r.ok() ? "valid\n" : r.to_string());
    return r.ok() ? 0 : 1;
  };
  if (ctx.ws.systems.count(name))
    return report(validate_r_direct_system(ctx.ws.system(name)));
  if (ctx.ws.semilattices.count(name))
    return report(validate_semilattice(ctx.ws.semilattices.at(name)));
  if (ctx.ws.algebras.count(name)) {
    ctx.out << "valid\n";  // totality and closure are enforced at load time
    return 0;
  }
  if (ctx.ws.matrices.count(name)) {
    ctx.out << "valid\n";
    return 0;
  }
  throw Error("unknown system, semilattice, algebra or matrix '" + name + "'");
}

int cmd_calculus_transform(Ctx& ctx, const std::string& calc_name,
                           const std::string& star_text,
                           const std::string& antitheorem_name,
                           bool emit_blocks) {
  const Calculus& h = ctx.ws.calculus(calc_name);
  Formula star = parse_formula(star_text, h.sig);
  std::optional<std::vector<Formula>> sigma;
  if (!antitheorem_name.empty() && antitheorem_name != "none")
    sigma = ctx.ws.antitheorem(antitheorem_name);
  Calculus out = transform_to_containment(h, star, sigma);
  if (emit_blocks) {
    ctx.out << emit(out);
  } else {
    size_t h0 = 0, h3 = 0, h4 = 0, h5 = 0;
    for (const auto& s : out.schemas) switch (s.kind) {
        case SchemaKind::AxiomGuard: ++h0; break;
        case SchemaKind::PremiseSplice: ++h3; break;
        case SchemaKind::Antitheorem: ++h4; break;
        case SchemaKind::Rewrite: ++h5; break;
      }
    ctx.out << out.name << ": " << h0 << " guarded axioms, " << out.rules.size()
            << " star rules, " << h3 << " premise splices, " << h4
            << " explosion rules, " << h5 << " rewrite schemas\n";
  }
  return 0;
}

int cmd_calculus_check(Ctx& ctx, const std::string& calc_name,
                       const std::string& premises_text,
                       const std::string& derivation_file,
                       const std::string& derivation_text) {
  const Calculus& c = ctx.ws.calculus(calc_name);
  std::string text = derivation_text;
  if (!derivation_file.empty()) {
    std::ifstream in(derivation_file);
    if (!in) throw Error("cannot open derivation file '" + derivation_file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  if (text.empty()) throw Error("no derivation given");
  Derivation d = parse_derivation(text, c.sig);
  std::vector<Formula> prem = parse_formula_list_text(premises_text, c.sig);
  DerivationCheck chk = check_derivation(c, prem, d);
  if (chk.ok) {
    ctx.out << (ctx.porcelain ? "valid\n" : "VALID\n");
    return 0;
  }
  if (ctx.porcelain)
    ctx.out << "invalid\t" << chk.first_invalid_step << "\t" << chk.reason
            << "\n";
  else
    ctx.out << "INVALID at step " << chk.first_invalid_step << ": "
            << chk.reason << "\n";
  return 1;
}

int cmd_calculus_search(Ctx& ctx, const std::string& calc_name,
                        const std::string& premises_text,
                        const std::string& goal_text, int max_steps,
                        int max_depth) {
  const Calculus& c = ctx.ws.calculus(calc_name);
  std::vector<Formula> prem = parse_formula_list_text(premises_text, c.sig);
  Formula goal = parse_formula(goal_text, c.sig);
  SearchBounds b;
  if (max_steps > 0) b.max_steps = max_steps;
  if (max_depth > 0) b.max_formula_depth = max_depth;
  auto d = derive_bounded(c, prem, goal, b);
  if (!d) {
    ctx.out << (ctx.porcelain ? "notfound\n"
                              : "no derivation found within bounds (not a "
                                "refutation)\n");
    return 1;
  }
  ctx.out << emit(*d);
  return 0;
}

int cmd_verify(Ctx& ctx, const std::string& check_name) {
  const CompanionCheck& cc = ctx.ws.check(check_name);
  MatrixFamily candidate = ctx.ws.family_or_matrix(cc.candidate);
  BaseLogic base = base_from_args(ctx, cc.base, cc.antitheorem.value_or(""),
                                  cc.reading ? to_string(*cc.reading) : "");
  CompanionBounds bounds;
  bounds.vars = cc.vars;
  bounds.depth = cc.depth;
  bounds.max_premises = cc.max_premises;
  bounds.max_sequents = cc.limit;
  bounds.jobs = ctx.jobs;
  EquivalenceReport rep = check_companion_equivalence(candidate, base, bounds);
  if (ctx.porcelain) {
    ctx.out << "sequents\t" << rep.sequents << "\n"
            << "disagreements\t" << rep.disagreement_count << "\n";
    for (const auto& d : rep.disagreements)
      ctx.out << "disagree\t" << print_formula_list(d.premises) << "\t"
              << print_formula(d.conclusion) << "\t"
              << (d.candidate_holds ? "candidate-holds" : "candidate-fails")
              << "\t" << (d.base_holds ? "base-holds" : "base-fails") << "\n";
  } else {
    ctx.out << rep.disagreement_count << " disagreements / " << rep.sequents
            << " sequents\n";
    for (const auto& d : rep.disagreements) {
      ctx.out << "  " << print_formula_list(d.premises) << " |- "
              << print_formula(d.conclusion) << "  candidate "
              << (d.candidate_holds ? "holds" : "fails") << ", companion "
              << (d.base_holds ? "holds" : "fails");
      if (!d.witness.empty()) ctx.out << "  (" << d.witness << ")";
      ctx.out << "\n";
    }
    if (rep.truncated) ctx.out << "  (disagreement list truncated)\n";
  }
  return rep.disagreement_count == 0 ? 0 : 1;
}

int cmd_builtins(Ctx& ctx) {
  auto list = [&](const char* kind, const auto& map) {
    ctx.out << kind << ":";
    for (const auto& [name, _] : map) ctx.out << " " << name;
    ctx.out << "\n";
  };
  list("signatures", ctx.ws.signatures);
  list("algebras", ctx.ws.algebras);
  list("matrices", ctx.ws.matrices);
  list("calculi", ctx.ws.calculi);
  list("antitheorems", ctx.ws.antitheorems);
  list("companion-checks", ctx.ws.checks);
  return 0;
}

int cmd_parse(Ctx& ctx, const std::string& text, const std::string& matrix,
              const std::string& family, const std::string& algebra,
              const std::string& calculus) {
  const Signature& sig = signature_for(ctx, matrix, family, algebra, calculus);
  Formula f = parse_formula(text, sig);
  ctx.out << print_formula(f) << "\n";
  return 0;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  CliResult res;
  Ctx ctx;
  try {
    ctx.ws = initial_workspace();
  } catch (const std::exception& e) {
    res.err = std::string("error: ") + e.what() + "\n";
    res.exit_code = 2;
    return res;
  }

  CLI::App app{"finite-matrix logic workbench"};
  app.require_subcommand(1);
  std::vector<std::string> files;
  int seed = 0;
  app.add_option("--file", files, "load a declarations file (repeatable)");
  app.add_flag("--porcelain", ctx.porcelain, "machine-readable output");
  app.add_option("--jobs", ctx.jobs, "worker threads (0 = hardware)");
  app.add_option("--seed", seed, "random seed (reserved for property tools)");

  std::string p_formula, p_matrix, p_family, p_algebra, p_calculus;
  auto* parse_cmd = app.add_subcommand("parse", "parse and reprint a formula");
  parse_cmd->add_option("formula", p_formula)->required();
  parse_cmd->add_option("--matrix", p_matrix);
  parse_cmd->add_option("--family", p_family);
  parse_cmd->add_option("--algebra", p_algebra);
  parse_cmd->add_option("--calculus", p_calculus);

  std::string e_matrix, e_family, e_sequent;
  auto* entail_cmd = app.add_subcommand("entail", "matrix consequence check");
  entail_cmd->add_option("sequent", e_sequent)->required();
  entail_cmd->add_option("--matrix", e_matrix);
  entail_cmd->add_option("--family", e_family);

  std::string cm_matrix, cm_family, cm_sequent;
  auto* cm_cmd = app.add_subcommand("countermodel", "find a countermodel");
  cm_cmd->add_option("sequent", cm_sequent)->required();
  cm_cmd->add_option("--matrix", cm_matrix);
  cm_cmd->add_option("--family", cm_family);

  std::string co_base, co_antitheorem, co_reading, co_sequent;
  auto* co_cmd =
      app.add_subcommand("companion", "containment companion consequence");
  co_cmd->add_option("sequent", co_sequent)->required();
  co_cmd->add_option("--base", co_base)->required();
  co_cmd->add_option("--antitheorem", co_antitheorem);
  co_cmd->add_option("--reading", co_reading);

  auto* plonka_cmd = app.add_subcommand("plonka", "Plonka sum operations");
  plonka_cmd->require_subcommand(1);
  std::string ps_system;
  bool ps_emit = false;
  auto* ps_cmd = plonka_cmd->add_subcommand("sum", "sum an r-direct system");
  ps_cmd->add_option("system", ps_system)->required();
  ps_cmd->add_flag("--emit", ps_emit);
  std::string pd_matrix, pd_algebra, pd_star;
  bool pd_emit = false;
  auto* pd_cmd =
      plonka_cmd->add_subcommand("decompose", "partition-function decomposition");
  pd_cmd->add_option("matrix", pd_matrix);
  pd_cmd->add_option("--algebra", pd_algebra);
  pd_cmd->add_option("--star", pd_star)->required();
  pd_cmd->add_flag("--emit", pd_emit);

  std::string v_name;
  auto* val_cmd = app.add_subcommand("validate", "validate a declaration");
  val_cmd->add_option("name", v_name)->required();

  auto* calc_cmd = app.add_subcommand("calculus", "Hilbert calculus operations");
  calc_cmd->require_subcommand(1);
  std::string ct_calc, ct_star, ct_antitheorem;
  bool ct_emit = false;
  auto* ct_cmd = calc_cmd->add_subcommand("transform", "containment transform");
  ct_cmd->add_option("calculus", ct_calc)->required();
  ct_cmd->add_option("--star", ct_star)->required();
  ct_cmd->add_option("--antitheorem", ct_antitheorem);
  ct_cmd->add_flag("--emit", ct_emit);
  std::string cc_calc, cc_premises, cc_file, cc_text;
  auto* cc_cmd = calc_cmd->add_subcommand("check", "check a derivation");
  cc_cmd->add_option("calculus", cc_calc)->required();
  cc_cmd->add_option("--premises", cc_premises);
  cc_cmd->add_option("--derivation", cc_file);
  cc_cmd->add_option("--derivation-text", cc_text);
  std::string cs_calc, cs_premises, cs_goal;
  int cs_steps = 0, cs_depth = 0;
  auto* cs_cmd = calc_cmd->add_subcommand("search", "bounded proof search");
  cs_cmd->add_option("calculus", cs_calc)->required();
  cs_cmd->add_option("--premises", cs_premises);
  cs_cmd->add_option("--goal", cs_goal)->required();
  cs_cmd->add_option("--max-steps", cs_steps);
  cs_cmd->add_option("--max-depth", cs_depth);

  std::string vf_name;
  auto* vf_cmd = app.add_subcommand("verify", "run a companion-check harness");
  vf_cmd->add_option("check", vf_name)->required();

  app.add_subcommand("builtins", "list built-in fixtures");

  std::vector<std::string> argv = args;
  try {
    std::vector<const char*> cargs;
    cargs.push_back("plonkalog");
    for (const auto& a : argv) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    if (e.get_exit_code() == 0) {  // --help
      os << app.help();
      res.out = os.str();
      res.exit_code = 0;
      return res;
    }
    res.err = std::string("usage error: ") + e.what() + "\n";
    res.exit_code = 2;
    return res;
  }

  try {
    for (const auto& f : files) load_file(ctx.ws, f);
    int code = 2;
    if (parse_cmd->parsed())
      code = cmd_parse(ctx, p_formula, p_matrix, p_family, p_algebra, p_calculus);
    else if (entail_cmd->parsed())
      code = cmd_entail(ctx, !e_matrix.empty() ? e_matrix : e_family, e_sequent);
    else if (cm_cmd->parsed())
      code = cmd_countermodel(ctx, !cm_matrix.empty() ? cm_matrix : cm_family,
                              cm_sequent);
    else if (co_cmd->parsed())
      code = cmd_companion(ctx, co_base, co_antitheorem, co_reading, co_sequent);
    else if (ps_cmd->parsed())
      code = cmd_plonka_sum(ctx, ps_system, ps_emit);
    else if (pd_cmd->parsed())
      code = cmd_plonka_decompose(ctx, pd_matrix, pd_algebra, pd_star, pd_emit);
    else if (val_cmd->parsed())
      code = cmd_validate(ctx, v_name);
    else if (ct_cmd->parsed())
      code = cmd_calculus_transform(ctx, ct_calc, ct_star, ct_antitheorem,
                                    ct_emit);
    else if (cc_cmd->parsed())
      code = cmd_calculus_check(ctx, cc_calc, cc_premises, cc_file, cc_text);
    else if (cs_cmd->parsed())
      code = cmd_calculus_search(ctx, cs_calc, cs_premises, cs_goal, cs_steps,
                                 cs_depth);
    else if (vf_cmd->parsed())
      code = cmd_verify(ctx, vf_name);
    else
      code = cmd_builtins(ctx);
    res.exit_code = code;
  } catch (const std::exception& e) {
    res.err = std::string("error: ") + e.what() + "\n";
    res.exit_code = 2;
  }
  res.out = ctx.out.str();
  return res;
}

}  // namespace plonkalog
