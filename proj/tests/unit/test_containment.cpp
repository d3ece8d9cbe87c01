#include <doctest.h>

#include "../support/generators.hpp"
#include "plonkalog/workspace.hpp"

using namespace plonkalog;

namespace {

Formula p4(const char* t) {
  return parse_formula(t, builtins().algebra("WK").sig);
}

BaseLogic cl_base(AntitheoremMode mode = AntitheoremMode::Semantic) {
  return BaseLogic::make(MatrixFamily::single(builtins().matrix("CL2")),
                         std::vector<Formula>{p4("x"), p4("not x")}, mode);
}

BaseLogic pwk_base() {
  return BaseLogic::make(MatrixFamily::single(builtins().matrix("PWK")),
                         std::nullopt, std::nullopt);
}

}  // namespace

TEST_CASE("BaseLogic validates the declared antitheorem") {
  CHECK_THROWS_AS(
      BaseLogic::make(MatrixFamily::single(builtins().matrix("BD")),
                      std::vector<Formula>{parse_formula(
                          "x", builtins().algebra("M4").sig),
                                           parse_formula(
                                               "not x",
                                               builtins().algebra("M4").sig)},
                      std::nullopt),
      Error);
  CHECK(cl_base().mode == AntitheoremMode::Semantic);
  CHECK(pwk_base().mode == AntitheoremMode::None);
  CHECK_THROWS_AS(BaseLogic::make(MatrixFamily::single(builtins().matrix("CL2")),
                                  std::nullopt, AntitheoremMode::Instance),
                  Error);
}

TEST_CASE("containment_entails examples") {
  BaseLogic cl = cl_base();
  CHECK(containment_entails(cl, {p4("p /\\ q")}, p4("p")));
  CHECK(!containment_entails(cl, {p4("p")}, p4("p \\/ q")));
  CHECK(containment_entails(cl, {p4("p"), p4("not p")}, p4("q")));
  // Classical consequence without variable inclusion is rejected.
  CHECK(!containment_entails(cl, {p4("p")}, p4("q \\/ not q")));
  CHECK(!containment_entails(cl, {}, p4("p -> p")));
}

TEST_CASE("antitheorem clause readings differ on one-formula contradictions") {
  std::vector<Formula> gamma = {p4("p /\\ not p")};
  Formula q = p4("q");
  CHECK(containment_entails(cl_base(AntitheoremMode::Semantic), gamma, q));
  CHECK(!containment_entails(cl_base(AntitheoremMode::Instance), gamma, q));
  CHECK(!containment_entails(cl_base(AntitheoremMode::Literal), gamma, q));
  CHECK(!containment_entails(cl_base(AntitheoremMode::None), gamma, q));
  // An instance pair with a conclusion outside its variables separates the
  // literal reading from the other two.
  std::vector<Formula> pair = {p4("p /\\ q"), p4("not (p /\\ q)")};
  Formula r = p4("r");
  CHECK(containment_entails(cl_base(AntitheoremMode::Semantic), pair, r));
  CHECK(containment_entails(cl_base(AntitheoremMode::Instance), pair, r));
  CHECK(!containment_entails(cl_base(AntitheoremMode::Literal), pair, r));
  std::vector<Formula> verbatim = {p4("x"), p4("not x")};
  CHECK(containment_entails(cl_base(AntitheoremMode::Literal), verbatim, r));
}

TEST_CASE("containment_entails is monotone and substitution invariant") {
  gens::Rng rng(11);
  const Signature& sig = builtins().algebra("WK").sig;
  std::vector<std::string> vars = {"p", "q", "r"};
  BaseLogic cl = cl_base();
  for (int i = 0; i < 200; ++i) {
    std::vector<Formula> prem;
    int np = gens::pick(rng, 3);
    for (int k = 0; k < np; ++k)
      prem.push_back(gens::random_formula(rng, sig, vars, 2));
    Formula concl = gens::random_formula(rng, sig, vars, 2);
    if (!containment_entails(cl, prem, concl)) continue;
    std::vector<Formula> bigger = prem;
    bigger.push_back(gens::random_formula(rng, sig, vars, 2));
    CHECK(containment_entails(cl, bigger, concl));
    Substitution sub = gens::random_substitution(rng, sig, vars, 1);
    std::vector<Formula> sprem;
    for (const auto& p : prem) sprem.push_back(substitute(p, sub));
    CHECK(containment_entails(cl, sprem, substitute(concl, sub)));
  }
}

TEST_CASE("the variable-inclusion branch implies base entailment") {
  gens::Rng rng(12);
  const Signature& sig = builtins().algebra("WK").sig;
  std::vector<std::string> vars = {"p", "q"};
  BaseLogic cl = cl_base(AntitheoremMode::None);
  for (int i = 0; i < 200; ++i) {
    std::vector<Formula> prem = {gens::random_formula(rng, sig, vars, 2)};
    Formula concl = gens::random_formula(rng, sig, vars, 2);
    if (containment_entails(cl, prem, concl))
      CHECK(entails(cl.family, prem, concl));
  }
}

TEST_CASE("verify_r_partition_function") {
  Formula star = p4("x /\\ (x \\/ y)");
  BaseLogic b3 = BaseLogic::make(MatrixFamily::single(builtins().matrix("B3")),
                                 std::nullopt, std::nullopt);
  CHECK(verify_r_partition_function(b3, star).ok);
  CHECK(verify_r_partition_function(cl_base(), star).ok);

  RpfCheck bad = verify_r_partition_function(cl_base(), p4("x \\/ y"));
  CHECK(!bad.ok);
  CHECK(bad.clause == "(ii)");  // x or y |- x fails at x=0, y=1

  // The lattice star is not an r-partition function for PWK: clause (ii)
  // fails at x=0, y=u (star value u is designated, x is not).
  RpfCheck pwk = verify_r_partition_function(
      pwk_base(), parse_formula("x /\\ (x \\/ y)",
                                builtins().algebra("WK3").sig));
  CHECK(!pwk.ok);
  CHECK(pwk.clause == "(ii)");

  CHECK_THROWS_AS(verify_r_partition_function(cl_base(), p4("x /\\ x")), Error);
}

TEST_CASE("enumerate_formulas is deterministic and sized as expected") {
  const Signature& sig4 = builtins().algebra("WK").sig;
  auto space0 = enumerate_formulas(sig4, {"p", "q", "r"}, 0);
  CHECK(space0.size() == 3);
  auto space1 = enumerate_formulas(sig4, {"p", "q", "r"}, 1);
  CHECK(space1.size() == 3 + 3 + 3 * 9);
  auto space2 = enumerate_formulas(sig4, {"p", "q", "r"}, 2);
  CHECK(space2.size() == 3303);
  for (size_t i = 0; i < space1.size(); ++i) CHECK(space1[i] == space2[i]);
  const Signature& sig3 = builtins().algebra("WK3").sig;
  CHECK(enumerate_formulas(sig3, {"p", "q", "r"}, 2).size() == 1179);
}

TEST_CASE("small harness run: B3 against the CL companion, depth 1") {
  CompanionBounds b;
  b.vars = {"p", "q"};
  b.depth = 1;
  b.max_premises = 2;
  b.jobs = 1;
  EquivalenceReport rep = check_companion_equivalence(
      MatrixFamily::single(builtins().matrix("B3")), cl_base(), b);
  CHECK(rep.formula_count == 2 + 2 + 3 * 4);
  CHECK(rep.equivalent());
  CHECK(rep.sequents ==
        rep.premise_sets * rep.formula_count);
}

TEST_CASE("harness records disagreements canonically and in parallel") {
  // Deliberately wrong pairing: the classical matrix is not the containment
  // companion of classical logic (tautologies break variable inclusion).
  CompanionBounds b;
  b.vars = {"p", "q"};
  b.depth = 1;
  b.max_premises = 1;
  b.jobs = 1;
  EquivalenceReport one = check_companion_equivalence(
      MatrixFamily::single(builtins().matrix("CL2")), cl_base(), b);
  CHECK(!one.equivalent());
  CHECK(one.disagreement_count > 0);
  REQUIRE(!one.disagreements.empty());
  // First disagreement in canonical order: empty premises, first tautology
  // in enumeration order.
  CHECK(one.disagreements[0].premises.empty());
  CHECK(one.disagreements[0].candidate_holds);
  CHECK(!one.disagreements[0].base_holds);

  b.jobs = 2;
  EquivalenceReport two = check_companion_equivalence(
      MatrixFamily::single(builtins().matrix("CL2")), cl_base(), b);
  CHECK(two.disagreement_count == one.disagreement_count);
  REQUIRE(two.disagreements.size() == one.disagreements.size());
  for (size_t i = 0; i < one.disagreements.size(); ++i) {
    CHECK(two.disagreements[i].premises == one.disagreements[i].premises);
    CHECK(two.disagreements[i].conclusion == one.disagreements[i].conclusion);
  }
}

TEST_CASE("harness respects the sequent cap") {
  CompanionBounds b;
  b.vars = {"p", "q", "r"};
  b.depth = 2;
  b.max_premises = 2;
  b.max_sequents = 1000;
  CHECK_THROWS_WITH_AS(
      check_companion_equivalence(MatrixFamily::single(builtins().matrix("B3")),
                                  cl_base(), b),
      doctest::Contains("exceeds the cap"), Error);
}

TEST_CASE("antitheorem checks agree between candidate and companion") {
  // Bounded antitheorem sharing: for one-variable sets from the space,
  // is_antitheorem on the candidate equals the companion-side check.
  BaseLogic cl = cl_base();
  MatrixFamily b3 = MatrixFamily::single(builtins().matrix("B3"));
  auto space = enumerate_formulas(cl.family.sig(), {"x"}, 2);
  for (size_t i = 0; i < space.size(); ++i)
    for (size_t j = i; j < space.size(); ++j) {
      std::vector<Formula> sigma = normalize_set({space[i], space[j]});
      bool cand = is_antitheorem(b3, sigma);
      Formula y = Formula::var("y");
      bool comp = containment_entails(cl, sigma, y);
      CHECK(cand == comp);
    }
}
