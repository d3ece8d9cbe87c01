#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "plonkalog/cli.hpp"
#include "plonkalog/workspace.hpp"

using namespace plonkalog;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& contents) {
    path = std::filesystem::temp_directory_path() /
           ("plonkalog_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++) + ".lgc");
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
  static int counter;
};
int TempFile::counter = 0;

}  // namespace

TEST_CASE("entail exit codes and reports") {
  CliResult holds = run_cli({"entail", "--matrix", "B3", "p, not p |- q"});
  CHECK(holds.exit_code == 0);
  CHECK(holds.out == "HOLDS\n");

  CliResult fails = run_cli({"entail", "--matrix", "B3", "p |- p or q"});
  CHECK(fails.exit_code == 1);
  CHECK(fails.out.find("FAILS") == 0);
  CHECK(fails.out.find("p=1") != std::string::npos);
  CHECK(fails.out.find("q=u") != std::string::npos);

  CliResult usage = run_cli({"entail", "--matrix", "B3", "p |-"});
  CHECK(usage.exit_code == 2);

  CliResult porcelain =
      run_cli({"--porcelain", "entail", "--matrix", "B3", "p |- p or q"});
  CHECK(porcelain.exit_code == 1);
  CHECK(porcelain.out == "fails\tB3\tp=1\tq=u\n");
}

TEST_CASE("countermodel command") {
  CliResult found = run_cli({"countermodel", "--matrix", "CL2", "p |- q"});
  CHECK(found.exit_code == 0);
  CHECK(found.out.find("p=1") != std::string::npos);
  CliResult none = run_cli({"countermodel", "--matrix", "CL2", "p, not p |- q"});
  CHECK(none.exit_code == 1);
}

TEST_CASE("companion command") {
  CliResult r1 = run_cli({"companion", "--base", "CL2", "--antitheorem",
                          "SIGMA", "p /\\ q |- p"});
  CHECK(r1.exit_code == 0);
  CliResult r2 = run_cli({"companion", "--base", "CL2", "--antitheorem",
                          "SIGMA", "p |- p \\/ q"});
  CHECK(r2.exit_code == 1);
  // PWK does not project conjunctions (u infects), but adjunction holds.
  CliResult r3 = run_cli({"companion", "--base", "PWK", "p, q |- p /\\ q"});
  CHECK(r3.exit_code == 0);
  CliResult r4 = run_cli({"companion", "--base", "PWK", "p /\\ q |- q"});
  CHECK(r4.exit_code == 1);
}

TEST_CASE("parse command reprints canonically") {
  CliResult r = run_cli({"parse", "--matrix", "B3", "neg (p /\\ (q \\/ p))"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "not (p /\\ (q \\/ p))\n");
  CliResult bad = run_cli({"parse", "--matrix", "B3", "p /\\"});
  CHECK(bad.exit_code == 2);
}

TEST_CASE("plonka sum and decompose through files") {
  TempFile f(R"(
algebra U4 { elements: u
  op not/1: u->u
  op and/2: (u,u)->u
  op or/2: (u,u)->u
  op to/2: (u,u)->u
}
matrix EU4 { algebra: U4; filter: }
semilattice C2 { elements: i, j; join: (i,j)->j }
system WKSYS { index: C2; fiber i: CL2; fiber j: EU4; hom (i,j): _->u }
)");
  CliResult sum = run_cli({"--file", f.path.string(), "plonka", "sum", "WKSYS",
                           "--emit"});
  CHECK(sum.exit_code == 0);
  // The emitted blocks re-parse, and the sum is WK with filter {1}.
  Workspace ws;
  load_text(ws, sum.out);
  CHECK(matrices_equal(
      LogicalMatrix::make("cmp", ws.algebra("WKSYS_sum_alg"),
                          ws.matrix("WKSYS_sum").filter_names()),
      builtins().matrix("B3")));

  CliResult dec = run_cli({"plonka", "decompose", "B3", "--star",
                           "x /\\ (x \\/ y)", "--emit"});
  CHECK(dec.exit_code == 0);
  Workspace ws2;
  load_text(ws2, dec.out);
  CHECK(ws2.systems.count("B3_dec") == 1);
  CHECK(validate_r_direct_system(ws2.system("B3_dec")).ok());

  CliResult val = run_cli({"--file", f.path.string(), "validate", "WKSYS"});
  CHECK(val.exit_code == 0);
  CHECK(val.out == "valid\n");
}

TEST_CASE("calculus transform, check and search") {
  CliResult t = run_cli({"calculus", "transform", "CL", "--star",
                         "x /\\ (x \\/ y)", "--antitheorem", "SIGMA",
                         "--emit"});
  CHECK(t.exit_code == 0);
  Workspace ws;
  load_text(ws, t.out);
  CHECK(ws.calculi.count("CLr") == 1);
  CHECK(ws.calculus("CLr").rules.size() == 2);

  TempFile deriv("1. p  by premise\n"
                 "2. q  by premise\n"
                 "3. p /\\ (p \\/ q)  by H1 from 1, 2\n"
                 "4. p  by H2 from 3\n");
  TempFile calc(t.out);
  CliResult chk =
      run_cli({"--file", calc.path.string(), "calculus", "check", "CLr",
               "--premises", "p, q", "--derivation", deriv.path.string()});
  CHECK(chk.exit_code == 0);
  CHECK(chk.out == "VALID\n");

  CliResult bad = run_cli({"--file", calc.path.string(), "calculus", "check",
                           "CLr", "--premises", "p", "--derivation-text",
                           "1. q by premise"});
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("INVALID at step 1") != std::string::npos);

  CliResult search = run_cli({"--file", calc.path.string(), "calculus",
                              "search", "CLr", "--premises", "p, not p",
                              "--goal", "q"});
  CHECK(search.exit_code == 0);
  CHECK(search.out.find("by H4") != std::string::npos);

  CliResult nf = run_cli({"--file", calc.path.string(), "calculus", "search",
                          "CLr", "--premises", "p", "--goal", "p \\/ q",
                          "--max-steps", "150"});
  CHECK(nf.exit_code == 1);
}

TEST_CASE("verify on a small file-defined harness") {
  TempFile f(R"(
companion-check tiny {
  candidate: B3
  base: CL2
  antitheorem: SIGMA
  vars: p, q
  depth: 1
  max-premises: 2
}
)");
  CliResult r = run_cli({"--file", f.path.string(), "verify", "tiny"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0 disagreements") == 0);

  TempFile wrong(R"(
companion-check broken {
  candidate: CL2
  base: CL2
  antitheorem: SIGMA
  vars: p, q
  depth: 1
  max-premises: 1
}
)");
  CliResult w = run_cli({"--file", wrong.path.string(), "verify", "broken"});
  CHECK(w.exit_code == 1);
  CHECK(w.out.find(" disagreements") != std::string::npos);
}

TEST_CASE("builtins listing and unknown names") {
  CliResult r = run_cli({"builtins"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("KW4") != std::string::npos);
  CliResult bad = run_cli({"entail", "--matrix", "NOPE", "p |- p"});
  CHECK(bad.exit_code == 2);
}

TEST_CASE("PLONKALOG_BUILTIN_DIR overrides the catalog") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() /
                 ("plonkalog_builtins_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "mini.lgc");
    out << "algebra B2 { elements: 0, 1\n"
           "  op not/1: 0->1, 1->0\n"
           "  op and/2: (0,_)->0, (1,0)->0, (1,1)->1\n"
           "}\n"
           "matrix M { algebra: B2; filter: 1 }\n";
  }
  setenv("PLONKALOG_BUILTIN_DIR", dir.string().c_str(), 1);
  CliResult r = run_cli({"builtins"});
  unsetenv("PLONKALOG_BUILTIN_DIR");
  std::error_code ec;
  fs::remove_all(dir, ec);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("M") != std::string::npos);
  CHECK(r.out.find("KW4") == std::string::npos);
}
