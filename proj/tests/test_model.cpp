#include "doctest.h"

#include "fa/axioms.hpp"
#include "fa/model.hpp"
#include "support.hpp"

using namespace fa;
using fa::testing::Rng;

namespace {

Numeral oracle_isqrt(std::uint64_t n) {
  std::uint64_t r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return Numeral(r);
}

}  // namespace

TEST_CASE("truncation examples") {
  FAModel t10 = make_truncation(10);
  CHECK(t10.plus(4, 5) == Numeral(9));
  CHECK_FALSE(t10.plus(6, 7));

  FAModel t1 = make_truncation(1);
  CHECK(t1.size() == 2);
  CHECK(t1.succ(0) == Numeral(1));
  CHECK_FALSE(t1.succ(1));

  FAModel t100 = make_truncation(100);
  CHECK(t100.largest() == 100);
  CHECK(t100.times(10, 10) == Numeral(100));
  CHECK_FALSE(t100.times(10, 11));
  CHECK_FALSE(t100.plus(60, 70));
  CHECK(t100.plus(0, 7) == Numeral(7));

  CHECK_THROWS_AS(make_truncation(0), std::invalid_argument);
  CHECK(t10.structure().describe() == "N|10");
}

TEST_CASE("operations outside the universe are domain errors") {
  FAModel t = make_truncation(10);
  CHECK_THROWS_AS(t.plus(11, 0), DomainError);
  CHECK_THROWS_AS(t.times(0, 11), DomainError);
  CHECK_THROWS_AS(t.less(3, 12), DomainError);
  // defined domain, no value: not an error
  CHECK_NOTHROW(t.plus(10, 10));
}

TEST_CASE("subset world examples") {
  StructurePtr s35 = make_subset_world({3, 5});
  CHECK(plus_graph(*s35).empty());
  CHECK(s35->less(3, 5));
  CHECK_FALSE(s35->zero());
  CHECK_FALSE(s35->one());

  StructurePtr s024 = make_subset_world({0, 2, 4});
  std::vector<Triple> expected{{0, 0, 0}, {0, 2, 2}, {0, 4, 4}, {2, 0, 2}, {2, 2, 4}, {4, 0, 4}};
  CHECK(plus_graph(*s024) == expected);

  StructurePtr empty = make_subset_world({});
  CHECK(empty->size() == 0);
  CHECK_FALSE(empty->zero());
  CHECK_FALSE(empty->one());
  CHECK(empty->describe() == "{}");

  StructurePtr s123 = make_subset_world({1, 2, 3});
  CHECK(s123->plus(1, 2) == Numeral(3));
  CHECK_FALSE(s123->plus(2, 2));
  CHECK_THROWS_AS(s123->plus(0, 1), DomainError);
}

TEST_CASE("subset worlds dedupe and sort") {
  StructurePtr s = make_subset_world({4, 0, 4, 2});
  REQUIRE(s->size() == 3);
  CHECK(s->element(0) == 0);
  CHECK(s->element(2) == 4);
  CHECK(s->describe() == "{0,2,4}");
}

TEST_CASE("largest square base examples") {
  CHECK(largest_square_base(make_truncation(100)) == 10);
  CHECK(largest_square_base(make_truncation(99)) == 9);
  CHECK(largest_square_base(make_truncation(12)) == 3);
  CHECK(largest_square_base(make_truncation(1)) == 1);
}

TEST_CASE("property: largest square base is the integer square root") {
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    CAPTURE(n);
    REQUIRE(largest_square_base(make_truncation(n)) == oracle_isqrt(n));
  }
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = 1 + rng.below(1'000'000'000'000ULL);
    CAPTURE(n);
    REQUIRE(largest_square_base(make_truncation(n)) == isqrt(Numeral(n)));
    const Numeral r = isqrt(Numeral(n));
    REQUIRE(r * r <= n);
    REQUIRE((r + 1) * (r + 1) > n);
  }
}

TEST_CASE("property: truncation arithmetic matches the oracle") {
  for (std::uint64_t n = 1; n <= 40; ++n) {
    FAModel m = make_truncation(n);
    for (std::uint64_t a = 0; a <= n; ++a)
      for (std::uint64_t b = 0; b <= n; ++b) {
        CAPTURE(n);
        CAPTURE(a);
        CAPTURE(b);
        auto s = m.plus(a, b);
        auto p = m.times(a, b);
        REQUIRE(bool(s) == (a + b <= n));
        REQUIRE(bool(p) == (a * b <= n));
        if (s) REQUIRE(*s == a + b);
        if (p) REQUIRE(*p == a * b);
        REQUIRE(m.less(a, b) == (a < b));
      }
  }
  Rng rng(12);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t n = 1 + rng.below(1'000'000);
    FAModel m = make_truncation(n);
    const std::uint64_t a = rng.below(n + 1), b = rng.below(n + 1);
    REQUIRE(bool(m.plus(a, b)) == (a + b <= n));
    REQUIRE(bool(m.times(a, b)) == (a * b <= n));
  }
}

TEST_CASE("property: downward definedness and Kleene laws") {
  Rng rng(13);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::uint64_t n = 1 + rng.below(60);
    FAModel m = make_truncation(n);
    const Numeral a = rng.below(n + 1), b = rng.below(n + 1), c = rng.below(n + 1);
    const Numeral a2 = rng.below(std::uint64_t(a) + 1), b2 = rng.below(std::uint64_t(b) + 1);
    if (m.plus(a, b)) CHECK(m.plus(a2, b2));
    if (m.times(a, b)) CHECK(m.times(a2, b2));

    CHECK(m.plus(a, b) == m.plus(b, a));
    CHECK(m.times(a, b) == m.times(b, a));

    auto assoc = [&](auto op, bool strict) {
      auto ab = op(a, b);
      auto bc = op(b, c);
      std::optional<Numeral> left = ab ? op(*ab, c) : std::nullopt;
      std::optional<Numeral> right = bc ? op(a, *bc) : std::nullopt;
      if (strict) CHECK(left == right);
      if (left && right) CHECK(*left == *right);
    };
    assoc([&](const Numeral& x, const Numeral& y) { return m.plus(x, y); }, true);
    // (0 * N) * N is defined while N * N need not be
    assoc([&](const Numeral& x, const Numeral& y) { return m.times(x, y); }, a != 0 && b != 0 && c != 0);
  }
}

TEST_CASE("property: subset worlds are induced substructures") {
  Rng rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    auto xs = fa::testing::random_subset(rng, 12, 8);
    StructurePtr s = make_subset_world(xs);
    for (const Triple& t : plus_graph(*s)) CHECK(t.a + t.b == t.c);
    for (const Triple& t : times_graph(*s)) CHECK(t.a * t.b == t.c);
    for (std::size_t i = 0; i < s->size(); ++i)
      for (std::size_t j = 0; j < s->size(); ++j) {
        const Numeral a = s->element(i), b = s->element(j);
        CHECK(bool(s->plus(a, b)) == s->contains(a + b));
        CHECK(bool(s->times(a, b)) == s->contains(a * b));
      }
    CHECK(bool(s->zero()) == s->contains(0));
    CHECK(bool(s->one()) == s->contains(1));
  }
}

TEST_CASE("FA axioms on truncations") {
  std::vector<Formula> corpus{parse_formula("x = x"), parse_formula("x < N | x = N"),
                              parse_formula("Def(x + 0)"), parse_formula("x = 0 | E y < x. y + 1 = x")};
  for (std::uint64_t n : {1, 2, 3, 4, 5, 9, 12, 37, 100}) {
    CAPTURE(n);
    AxiomReport r = check_fa_axioms(make_truncation(n), corpus);
    CHECK(r.passed());
    CHECK(r.mode == CheckMode::Exhaustive);
  }
  AxiomReport big = check_fa_axioms(make_truncation(1500), corpus, SamplingPolicy{10'000, 3});
  CHECK(big.passed());
  CHECK(big.mode == CheckMode::Sampled);
}

TEST_CASE("induction tautology on N|5") {
  AxiomReport r = check_fa_axioms(make_truncation(5), {parse_formula("x < N | x = N")});
  REQUIRE(r.induction.size() == 1);
  CHECK(r.induction[0].holds);
  CHECK(r.induction[0].variable == "x");
}

TEST_CASE("an induction instance with a failing step still holds") {
  AxiomReport r = check_fa_axioms(make_truncation(10), {parse_formula("Def(x + x)")});
  REQUIRE(r.induction.size() == 1);
  CHECK(r.induction[0].holds);
  CHECK(r.passed());
}

TEST_CASE("a failing induction instance is reported") {
  // in {0,2} the step never reaches 2: 0 + 1 is undefined
  AxiomReport r = check_fa_axioms(FAModel::presented(make_subset_world({0, 2}), 2), {parse_formula("!(x = N)")});
  REQUIRE(r.induction.size() == 1);
  CHECK_FALSE(r.induction[0].holds);
  CHECK_FALSE(r.induction_passed());
}

TEST_CASE("corpus formulas need exactly one free variable") {
  CHECK_THROWS_AS(check_fa_axioms(make_truncation(3), {parse_formula("x < y")}), std::invalid_argument);
  CHECK_THROWS_AS(check_fa_axioms(make_truncation(3), {parse_formula("0 < 1")}), std::invalid_argument);
}

TEST_CASE("subset {0,2} fails the successor axiom") {
  AxiomReport r = check_fa_axioms(FAModel::presented(make_subset_world({0, 2}), 2), {});
  CHECK_FALSE(r.successor.passed);
  CHECK_FALSE(r.passed());
}

TEST_CASE("property: non-downward-closed subset worlds fail the successor axiom") {
  Rng rng(15);
  int tried = 0;
  while (tried < 200) {
    auto xs = fa::testing::random_subset(rng, 15, 7);
    xs.push_back(0);
    StructurePtr s = make_subset_world(xs);
    const Numeral top = s->element(s->size() - 1);
    if (Numeral(s->size()) == top + 1) continue;  // downward closed
    ++tried;
    AxiomReport r = check_fa_axioms(FAModel::presented(s, top), {});
    CAPTURE(s->describe());
    CHECK_FALSE(r.successor.passed);
  }
}

TEST_CASE("presented models require N to be an individual") {
  CHECK_THROWS(FAModel::presented(make_subset_world({0, 1}), 5));
  CHECK_THROWS(FAModel(make_subset_world({0, 1})));
}
