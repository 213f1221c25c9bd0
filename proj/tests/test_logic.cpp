#include "doctest.h"

#include "fa/eval.hpp"
#include "fa/formula.hpp"
#include "fa/model.hpp"
#include "support.hpp"

using namespace fa;
using fa::testing::FormulaShape;
using fa::testing::Rng;

namespace {

Term v(const char* name) { return Term::var(name); }

// Bounded quantifiers rewritten as unbounded ones with a guard conjunct.
Formula unguard(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Not: return Formula::negation(unguard(f.lhs()));
    case K::And: return Formula::conjunction(unguard(f.lhs()), unguard(f.rhs()));
    case K::Or: return Formula::disjunction(unguard(f.lhs()), unguard(f.rhs()));
    case K::Implies: return Formula::implication(unguard(f.lhs()), unguard(f.rhs()));
    case K::Forall:
    case K::Exists: {
      Formula body = unguard(f.body());
      if (!f.bound()) return f.kind() == K::Forall ? Formula::forall(f.var(), {}, body) : Formula::exists(f.var(), {}, body);
      Formula guard = Formula::lt(Term::var(f.var()), *f.bound());
      return f.kind() == K::Forall ? Formula::forall(f.var(), {}, Formula::implication(guard, body))
                                   : Formula::exists(f.var(), {}, Formula::conjunction(guard, body));
    }
    default: return f;
  }
}

std::vector<StructurePtr> test_family() {
  std::vector<StructurePtr> out;
  for (int n : {1, 2, 5, 9, 12}) out.push_back(make_truncation(n).shared());
  out.push_back(make_subset_world({0, 1, 2, 4}));
  out.push_back(make_subset_world({1, 3, 4, 7, 12}));
  out.push_back(make_subset_world({0, 2, 3, 5, 6}));
  return out;
}

}  // namespace

TEST_CASE("parse examples") {
  Formula succ = parse_formula("A a. E b. b = a + 1");
  CHECK(succ == Formula::forall("a", {}, Formula::exists("b", {}, Formula::eq(v("b"), Term::sum(v("a"), Term::one())))));

  Formula modal = parse_formula("box A a. dia E b. b = a + 1");
  CHECK(modal.kind() == Formula::Kind::Necessarily);
  CHECK(modal.lhs().kind() == Formula::Kind::Forall);
  CHECK(modal.lhs().body().kind() == Formula::Kind::Possibly);

  Formula bounded = parse_formula("E x < y. x * x = y");
  CHECK(bounded.kind() == Formula::Kind::Exists);
  REQUIRE(bounded.bound());
  CHECK(*bounded.bound() == v("y"));
  CHECK(is_delta0(bounded));
  CHECK(free_variables(bounded) == std::set<std::string>{"y"});
}

TEST_CASE("precedence and associativity") {
  CHECK(parse_term("a + b * c") == Term::sum(v("a"), Term::prod(v("b"), v("c"))));
  CHECK(parse_term("S(a) * 1") == Term::prod(Term::succ(v("a")), Term::one()));
  Formula p = parse_formula("0 = 0"), q = parse_formula("0 = 1"), r = parse_formula("1 = 1");
  CHECK(parse_formula("0 = 0 -> 0 = 1 -> 1 = 1") == Formula::implication(p, Formula::implication(q, r)));
  CHECK(parse_formula("0 = 0 | 0 = 1 & 1 = 1") == Formula::disjunction(p, Formula::conjunction(q, r)));
  CHECK(parse_formula("!0 = 0 & 0 = 1") == Formula::conjunction(Formula::negation(p), q));
  CHECK(parse_formula("dia 0 = 0 & 0 = 1") == Formula::conjunction(Formula::possibly(p), q));
  // quantifier scope runs to the right
  CHECK(parse_formula("E x. 0 = 0 & x = 1").body().kind() == Formula::Kind::And);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_formula("A a. E b. b = + 1");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 14);
  }
  CHECK_THROWS_AS(parse_formula("E X. X = 0"), ParseError);
  CHECK_THROWS_AS(parse_formula("Def(0"), ParseError);
  CHECK_THROWS_AS(parse_formula("0 = 0 0"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
}

TEST_CASE("corpus files skip comments and blank lines") {
  auto fs = parse_corpus("# header\n\nx = x  # trailing\n  E y. y = 0\n");
  REQUIRE(fs.size() == 2);
  CHECK(fs[1] == parse_formula("E y. y = 0"));
}

TEST_CASE("property: printing then parsing is the identity") {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    FormulaShape shape;
    shape.depth = 1 + rng.below(4);
    shape.modal = rng.coin();
    Formula f = fa::testing::random_formula(rng, {"x", "y"}, shape);
    const std::string text = to_string(f);
    CAPTURE(text);
    Formula back = parse_formula(text);
    REQUIRE(back == f);
    REQUIRE(to_string(back) == text);
  }
}

TEST_CASE("term evaluation examples") {
  FAModel t10 = make_truncation(10);
  CHECK(eval_term(t10.structure(), parse_term("1 + 1 + 1")) == Numeral(3));
  CHECK_FALSE(eval_term(*make_subset_world({3}), parse_term("1 + 1 + 1")));
  CHECK_FALSE(eval_term(t10.structure(), parse_term("N + 1")));
  CHECK(eval_term(t10.structure(), parse_term("N")) == Numeral(10));
  CHECK_FALSE(eval_term(*make_subset_world({0, 1}), parse_term("N")));
  CHECK_THROWS_AS(eval_term(t10.structure(), parse_term("x + 1")), UnassignedVariable);
}

TEST_CASE("formula evaluation examples") {
  FAModel t10 = make_truncation(10);
  CHECK_FALSE(eval_formula(t10.structure(), parse_formula("A a. E b. b = a + 1")));
  CHECK(eval_formula(t10.structure(), parse_formula("E a. a * a = 1 + 1 + 1 + 1 + 1 + 1 + 1 + 1 + 1 & 1 + 1 < a")));
  auto s0 = make_subset_world({0});
  CHECK_FALSE(eval_formula(*s0, parse_formula("Def(1)")));
  CHECK(eval_formula(*s0, parse_formula("!Def(1)")));
  // negative convention: an undefined argument makes both x = t and its negation's atom false
  CHECK_FALSE(eval_formula(t10.structure(), parse_formula("N + 1 = N + 1")));
  CHECK(eval_formula(t10.structure(), parse_formula("!(N + 1 = N + 1)")));
  // undefined bounds: E false, A true
  CHECK_FALSE(eval_formula(t10.structure(), parse_formula("E x < N + 1. x = x")));
  CHECK(eval_formula(t10.structure(), parse_formula("A x < N + 1. !(x = x)")));
  CHECK(eval_formula(t10.structure(), parse_formula("Plus(1 + 1, 1 + 1 + 1, 1 + 1 + 1 + 1 + 1)")));
  CHECK_FALSE(eval_formula(t10.structure(), parse_formula("Times(N, N, N)")));
}

TEST_CASE("evaluation errors") {
  FAModel t5 = make_truncation(5);
  CHECK_THROWS_AS(eval_formula(t5.structure(), parse_formula("dia 0 = 0")), WrongEvaluator);
  CHECK_THROWS_AS(eval_formula(t5.structure(), parse_formula("x = 0")), UnassignedVariable);
  CHECK_THROWS_AS(eval_formula(t5.structure(), parse_formula("x = 0"), {{"x", 9}}), DomainError);
  CHECK(eval_formula(t5.structure(), parse_formula("x = 1 + 1"), {{"x", 2}}));
}

TEST_CASE("explain gives the counterexample") {
  auto lines = explain_formula(make_truncation(10).structure(), parse_formula("A a. E b. b = a + 1"));
  REQUIRE_FALSE(lines.empty());
  CHECK(lines[0] == "A a: counterexample a = 10");
}

TEST_CASE("delta0 examples") {
  CHECK(is_delta0(parse_formula("A x < y. x + 0 = x")));
  CHECK_FALSE(is_delta0(parse_formula("A x. E y. y = x + 1")));
  CHECK_FALSE(is_delta0(parse_formula("box A a. dia E b. b = a + 1")));
  CHECK_FALSE(is_first_order(parse_formula("dia 0 = 0")));
}

TEST_CASE("induction instance examples") {
  Formula inst = induction_instance(parse_formula("x = x"), "x");
  CHECK(to_string(inst) == "0 = 0 & (A x < N. x = x -> x + 1 = x + 1) -> A x. x = x");
  for (int n : {1, 4, 10}) CHECK(eval_formula(make_truncation(n).structure(), inst));

  // Def(x + x) over N|10: the base case holds, the step fails at x = 5
  FAModel m10 = make_truncation(10);
  const Structure& t10 = m10.structure();
  Formula phi = parse_formula("Def(x + x)");
  CHECK(eval_formula(t10, substitute(phi, "x", Term::zero())));
  CHECK_FALSE(eval_formula(t10, parse_formula("Def(x + x) -> Def((x + 1) + (x + 1))"), {{"x", 5}}));
  CHECK(eval_formula(t10, parse_formula("Def(x + x) -> Def((x + 1) + (x + 1))"), {{"x", 4}}));
  CHECK_FALSE(eval_formula(t10, parse_formula("A x < N. Def(x + x) -> Def((x + 1) + (x + 1))")));
  CHECK_FALSE(eval_formula(t10, parse_formula("A x. Def(x + x)")));
  CHECK(eval_formula(t10, induction_instance(phi, "x")));

  Formula top = induction_instance(parse_formula("x < N | x = N"), "x");
  for (int n : {1, 3, 12}) CHECK(eval_formula(make_truncation(n).structure(), top));

  CHECK_THROWS_AS(induction_instance(parse_formula("y = y"), "x"), std::invalid_argument);
  CHECK_THROWS_AS(induction_instance(parse_formula("dia x = x"), "x"), std::invalid_argument);
}

TEST_CASE("substitution avoids capture") {
  Formula f = parse_formula("E y. x < y");
  Formula g = substitute(f, "x", Term::var("y"));
  CHECK(free_variables(g) == std::set<std::string>{"y"});
  FAModel m3 = make_truncation(3);
  const Structure& t3 = m3.structure();
  CHECK(eval_formula(t3, g, {{"y", 2}}));
  CHECK_FALSE(eval_formula(t3, g, {{"y", 3}}));
  // bound occurrences stay put
  CHECK(substitute(parse_formula("A x. x = x"), "x", Term::one()) == parse_formula("A x. x = x"));
  // the bound is in the outer scope, but may not mention its own variable
  Formula h = substitute(parse_formula("A y < x. y < x"), "x", Term::var("y"));
  CHECK(free_variables(h) == std::set<std::string>{"y"});
  CHECK(h.var() != "y");
  CHECK(eval_formula(t3, h, {{"y", 3}}));
}

TEST_CASE("property: substitution lemma") {
  Rng rng(22);
  auto family = test_family();
  int checked = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const Structure& s = *family[rng.below(family.size())];
    FormulaShape shape;
    shape.depth = 1 + rng.below(3);
    Formula phi = fa::testing::random_formula(rng, {"x", "y"}, shape);
    Term t = fa::testing::random_term(rng, {"y", "v0", "v1"}, 2);
    Assignment a;
    for (const char* name : {"x", "y", "v0", "v1"}) a.set(name, s.element(rng.below(s.size())));
    auto value = eval_term(s, t, a);
    if (!value) continue;
    Assignment extended = a;
    extended.set("x", *value);
    CAPTURE(to_string(phi));
    CAPTURE(to_string(t));
    CAPTURE(s.describe());
    REQUIRE(eval_formula(s, substitute(phi, "x", t), a) == eval_formula(s, phi, extended));
    ++checked;
  }
  CHECK(checked > 500);
}

TEST_CASE("property: bounded and guarded unbounded quantifiers agree") {
  Rng rng(23);
  for (int trial = 0; trial < 1200; ++trial) {
    const std::uint64_t n = 1 + rng.below(12);
    FAModel m = make_truncation(n);
    const Structure& s = m.structure();
    FormulaShape shape;
    shape.depth = 1 + rng.below(3);
    shape.unbounded = false;
    Formula phi = fa::testing::random_formula(rng, {"x"}, shape);
    REQUIRE(is_delta0(phi));
    Assignment a{{"x", Numeral(rng.below(n + 1))}};
    CAPTURE(to_string(phi));
    CAPTURE(n);
    REQUIRE(eval_formula(s, phi, a) == eval_formula(s, unguard(phi), a));
  }
}

TEST_CASE("property: Def agrees with term evaluation") {
  Rng rng(24);
  auto family = test_family();
  family.push_back(make_subset_world({}));
  for (int trial = 0; trial < 3000; ++trial) {
    const Structure& s = *family[rng.below(family.size())];
    Term t = fa::testing::random_term(rng, s.size() ? std::vector<std::string>{"x"} : std::vector<std::string>{}, 3);
    Assignment a;
    if (s.size()) a.set("x", s.element(rng.below(s.size())));
    CAPTURE(to_string(t));
    REQUIRE(eval_formula(s, Formula::defined(t), a) == bool(eval_term(s, t, a)));
  }
}
