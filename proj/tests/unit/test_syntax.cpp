#include <doctest.h>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "plonkalog/syntax.hpp"

using namespace plonkalog;

namespace {

const Signature& sig4() {
  static const Signature s =
      Signature::make({{"not", 1}, {"and", 2}, {"or", 2}, {"to", 2}});
  return s;
}

Formula V(const char* n) { return Formula::var(n); }
Formula Not(Formula a) { return Formula::app("not", {std::move(a)}); }
Formula And(Formula a, Formula b) {
  return Formula::app("and", {std::move(a), std::move(b)});
}
Formula Or(Formula a, Formula b) {
  return Formula::app("or", {std::move(a), std::move(b)});
}

}  // namespace

TEST_CASE("signature validation") {
  CHECK_THROWS_AS(Signature::make({{"c", 0}}), Error);  // no constants
  CHECK_THROWS_AS(Signature::make({{"f", 1}, {"f", 2}}), Error);
  CHECK_THROWS_AS(Signature::make({{"9f", 1}}), Error);
  CHECK(sig4().arity("and") == 2);
  CHECK_THROWS_AS(sig4().arity("xor"), Error);
}

TEST_CASE("parse basic forms") {
  CHECK(parse_formula("p /\\ (p \\/ q)", sig4()) == And(V("p"), Or(V("p"), V("q"))));
  CHECK(parse_formula("neg neg p", sig4()) == Not(Not(V("p"))));
  CHECK(parse_formula("not not p", sig4()) == Not(Not(V("p"))));
  CHECK(parse_formula("and(p, q)", sig4()) == And(V("p"), V("q")));
  CHECK(parse_formula("p and q", sig4()) == And(V("p"), V("q")));
  CHECK_THROWS_AS(parse_formula("p /\\", sig4()), ParseError);
  CHECK_THROWS_AS(parse_formula("xor(p, q)", sig4()), ParseError);
  CHECK_THROWS_AS(parse_formula("and(p)", sig4()), ParseError);
  CHECK_THROWS_AS(parse_formula("p q", sig4()), ParseError);
}

TEST_CASE("precedence and ambiguity") {
  // and binds tighter than or; -> is right-associative; equal-precedence
  // chains of non-associative operators need parentheses.
  CHECK(parse_formula("p /\\ q \\/ r", sig4()) ==
        Or(And(V("p"), V("q")), V("r")));
  CHECK(parse_formula("p -> q -> r", sig4()) ==
        Formula::app("to", {V("p"), Formula::app("to", {V("q"), V("r")})}));
  CHECK(parse_formula("not p /\\ q", sig4()) == And(Not(V("p")), V("q")));
  CHECK_THROWS_AS(parse_formula("p /\\ q /\\ r", sig4()), ParseError);
  CHECK_THROWS_AS(parse_formula("p \\/ q \\/ r", sig4()), ParseError);
}

TEST_CASE("print then parse is identity") {
  gens::Rng rng(20240811);
  std::vector<std::string> vars = {"p", "q", "r"};
  for (int i = 0; i < 500; ++i) {
    Formula f = gens::random_formula(rng, sig4(), vars, 4);
    CHECK(parse_formula(print_formula(f), sig4()) == f);
  }
}

TEST_CASE("vars_of") {
  Formula f = And(V("x"), Or(V("x"), V("y")));
  CHECK(vars_of(f) == std::set<std::string>{"x", "y"});
  std::vector<Formula> gs = {And(V("p"), V("q")), Not(V("r"))};
  CHECK(vars_of(gs) == std::set<std::string>{"p", "q", "r"});
  CHECK(vars_of(std::vector<Formula>{}) == std::set<std::string>{});
}

TEST_CASE("substitute") {
  Formula f = And(V("x"), V("y"));
  Substitution s{{"x", And(V("p"), V("q"))}, {"y", V("p")}};
  CHECK(substitute(f, s) == And(And(V("p"), V("q")), V("p")));
  CHECK(substitute(f, {}) == f);
  CHECK(substitute(And(V("x"), V("x")), {{"x", Not(V("y"))}}) ==
        And(Not(V("y")), Not(V("y"))));
}

TEST_CASE("vars of a substituted formula") {
  gens::Rng rng(7);
  std::vector<std::string> vars = {"p", "q", "r"};
  for (int i = 0; i < 300; ++i) {
    Formula f = gens::random_formula(rng, sig4(), vars, 3);
    Substitution s = gens::random_substitution(rng, sig4(), vars, 2);
    std::set<std::string> expect;
    for (const auto& v : vars_of(f)) {
      auto it = s.find(v);
      if (it == s.end())
        expect.insert(v);
      else
        for (const auto& w : vars_of(it->second)) expect.insert(w);
    }
    CHECK(vars_of(substitute(f, s)) == expect);
  }
}

TEST_CASE("match examples") {
  Formula pat = And(V("x"), V("y"));
  auto m = match(pat, And(And(V("p"), V("q")), V("p")));
  REQUIRE(m.has_value());
  CHECK(m->at("x") == And(V("p"), V("q")));
  CHECK(m->at("y") == V("p"));
  CHECK(!match(And(V("x"), V("x")), And(V("p"), V("q"))).has_value());
  auto m2 = match(V("x"), And(V("p"), V("q")));
  REQUIRE(m2.has_value());
  CHECK(m2->at("x") == And(V("p"), V("q")));
}

TEST_CASE("match agrees with brute force") {
  gens::Rng rng(99);
  std::vector<std::string> vars = {"x", "y"};
  std::vector<std::string> tvars = {"p", "q"};
  for (int i = 0; i < 400; ++i) {
    Formula pat = gens::random_formula(rng, sig4(), vars, 2);
    Formula tgt = gens::random_formula(rng, sig4(), tvars, 3);
    auto fast = match(pat, tgt);
    auto slow = oracles::brute_force_match(pat, tgt);
    CHECK(fast.has_value() == slow.has_value());
    if (fast) CHECK(substitute(pat, *fast) == tgt);
  }
}

TEST_CASE("positions and replacement") {
  Formula f = And(V("p"), Or(V("p"), V("q")));
  auto pos = positions_of(f);
  CHECK(pos.size() == 5);  // root, p, or, p, q
  CHECK(subformula_at(f, {1, 1}) == V("q"));
  CHECK(replace_at(f, {1, 1}, Not(V("q"))) ==
        And(V("p"), Or(V("p"), Not(V("q")))));
  CHECK(replace_at(f, {}, V("z")) == V("z"));
  CHECK_THROWS_AS(subformula_at(f, {4}), Error);
}

TEST_CASE("normalize_set orders and deduplicates") {
  std::vector<Formula> fs = {And(V("p"), V("q")), V("p"), V("p")};
  auto n = normalize_set(fs);
  CHECK(n.size() == 2);
  CHECK(n[0] == V("p"));  // variables sort before applications
  CHECK(set_contains(n, And(V("p"), V("q"))));
  CHECK(!set_contains(n, V("q")));
}

TEST_CASE("fresh_var avoids the given set") {
  CHECK(fresh_var({"p"}, {"y", "z"}) == "y");
  CHECK(fresh_var({"y", "z"}, {"y", "z"}) == "y0");
}
