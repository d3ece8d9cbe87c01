#include <doctest.h>

#include "../support/generators.hpp"
#include "plonkalog/workspace.hpp"

using namespace plonkalog;

namespace {

const LogicalMatrix& mat(const char* name) { return builtins().matrix(name); }

std::vector<Formula> fs(const Signature& sig,
                        std::initializer_list<const char*> texts) {
  std::vector<Formula> out;
  for (const char* t : texts) out.push_back(parse_formula(t, sig));
  return out;
}

}  // namespace

TEST_CASE("entails examples") {
  const Signature& s4 = mat("CL2").algebra.sig;
  CHECK(entails(MatrixFamily::single(mat("CL2")), fs(s4, {"p", "p -> q"}),
                parse_formula("q", s4)));
  CHECK(!entails(MatrixFamily::single(mat("B3")), fs(s4, {"p"}),
                 parse_formula("p \\/ q", s4)));
  const Signature& s3 = mat("BD").algebra.sig;
  CHECK(!entails(MatrixFamily::single(mat("BD")), {},
                 parse_formula("p \\/ not p", s3)));
  CHECK_THROWS_AS(entails(MatrixFamily::single(mat("BD")), {},
                          parse_formula("p -> p", s4)),
                  Error);  // signature mismatch
}

TEST_CASE("find_countermodel returns the first witness deterministically") {
  const Signature& s4 = mat("CL2").algebra.sig;
  auto cm = find_countermodel(MatrixFamily::single(mat("CL2")), fs(s4, {"p"}),
                              parse_formula("q", s4));
  REQUIRE(cm.has_value());
  CHECK(cm->matrix == "CL2");
  CHECK(cm->assignment ==
        std::map<std::string, std::string>{{"p", "1"}, {"q", "0"}});

  CHECK(!find_countermodel(MatrixFamily::single(mat("CL2")),
                           fs(s4, {"p", "not p"}), parse_formula("q", s4))
             .has_value());

  auto wkcm = find_countermodel(MatrixFamily::single(mat("B3")), fs(s4, {"p"}),
                                parse_formula("p \\/ q", s4));
  REQUIRE(wkcm.has_value());
  CHECK(wkcm->matrix == "B3");
  CHECK(wkcm->assignment ==
        std::map<std::string, std::string>{{"p", "1"}, {"q", "u"}});
}

TEST_CASE("is_antitheorem") {
  const Signature& s4 = mat("CL2").algebra.sig;
  const Signature& s3 = mat("BD").algebra.sig;
  CHECK(is_antitheorem(MatrixFamily::single(mat("CL2")),
                       fs(s4, {"x", "not x"})));
  CHECK(!is_antitheorem(MatrixFamily::single(mat("BD")),
                        fs(s3, {"x", "not x"})));
  CHECK(!is_antitheorem(MatrixFamily::single(mat("CL2")), fs(s4, {"x"})));
  CHECK(is_antitheorem(MatrixFamily::single(mat("CL2")),
                       fs(s4, {"x /\\ not x"})));
  // PWK and LPM designate everything under the all-u assignment, so they
  // have no antitheorems at all.
  CHECK(!is_antitheorem(MatrixFamily::single(mat("PWK")),
                        fs(s3, {"x", "not x"})));
  CHECK(!is_antitheorem(MatrixFamily::single(mat("LPM")),
                        fs(s3, {"x", "not x"})));
  CHECK_THROWS_AS(
      is_antitheorem(MatrixFamily::single(mat("CL2")), fs(s4, {"x", "not y"})),
      Error);
}

TEST_CASE("is_trivial_matrix") {
  CHECK(is_trivial_matrix(mat("TRIV")));
  CHECK(!is_trivial_matrix(mat("CL2")));
  LogicalMatrix empty_one =
      LogicalMatrix::make("E", builtins().algebra("ONE"), {});
  CHECK(!is_trivial_matrix(empty_one));
}

TEST_CASE("is_model_of") {
  const Signature& s4 = mat("CL2").algebra.sig;
  Sequent star_rule{normalize_set(fs(s4, {"x", "y"})),
                    parse_formula("x /\\ (x \\/ y)", s4)};
  CHECK(is_model_of(mat("B3"), {star_rule}));

  Sequent mp{normalize_set(fs(s4, {"p", "p -> q"})), parse_formula("q", s4)};
  CHECK(is_model_of(mat("CL2"), {mp}));

  // p and q is designated in B3 only when both are 1, so the rule holds.
  Sequent proj{normalize_set(fs(s4, {"p /\\ q"})), parse_formula("p", s4)};
  CHECK(is_model_of(mat("B3"), {proj}));

  // It fails in PWK: p=0, q=u designates p and q but not p.
  Sequent proj3{normalize_set(fs(mat("PWK").algebra.sig, {"p /\\ q"})),
                parse_formula("p", mat("PWK").algebra.sig)};
  RuleWitness w;
  CHECK(!is_model_of(mat("PWK"), {proj3}, &w));
  CHECK(w.rule_index == 0);
  CHECK(w.cm.assignment ==
        std::map<std::string, std::string>{{"p", "0"}, {"q", "u"}});
}

TEST_CASE("entails over a family is the conjunction over its members") {
  const Signature& s3 = mat("PWK").algebra.sig;
  MatrixFamily fam = MatrixFamily::make(
      "F", {mat("PWK"), mat("KW4"), mat("LPM")});
  gens::Rng rng(42);
  std::vector<std::string> vars = {"p", "q"};
  for (int i = 0; i < 200; ++i) {
    std::vector<Formula> prem;
    int np = gens::pick(rng, 3);
    for (int k = 0; k < np; ++k)
      prem.push_back(gens::random_formula(rng, s3, vars, 2));
    Formula concl = gens::random_formula(rng, s3, vars, 2);
    bool whole = entails(fam, prem, concl);
    bool each = true;
    for (const auto& m : fam.matrices)
      each = each && entails(MatrixFamily::single(m), prem, concl);
    CHECK(whole == each);
  }
}

TEST_CASE("entails is monotone and substitution invariant") {
  const Signature& s4 = mat("B3").algebra.sig;
  MatrixFamily fam = MatrixFamily::single(mat("B3"));
  gens::Rng rng(4242);
  std::vector<std::string> vars = {"p", "q", "r"};
  for (int i = 0; i < 200; ++i) {
    std::vector<Formula> prem;
    int np = gens::pick(rng, 3);
    for (int k = 0; k < np; ++k)
      prem.push_back(gens::random_formula(rng, s4, vars, 2));
    Formula concl = gens::random_formula(rng, s4, vars, 2);
    if (!entails(fam, prem, concl)) continue;
    std::vector<Formula> bigger = prem;
    bigger.push_back(gens::random_formula(rng, s4, vars, 2));
    CHECK(entails(fam, bigger, concl));
    Substitution sub = gens::random_substitution(rng, s4, vars, 1);
    std::vector<Formula> sprem;
    for (const auto& p : prem) sprem.push_back(substitute(p, sub));
    CHECK(entails(fam, sprem, substitute(concl, sub)));
  }
}
