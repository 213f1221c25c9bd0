#include "fa/axioms.hpp"

#include "fa/eval.hpp"

namespace fa {

namespace {
constexpr std::size_t kMaxRecordedFailures = 8;
}

const char* to_string(CheckMode mode) { return mode == CheckMode::Exhaustive ? "exhaustive" : "sampled"; }

void CheckGroup::fail(std::string what) {
  passed = false;
  if (failures.size() < kMaxRecordedFailures) failures.push_back(std::move(what));
}

bool AxiomReport::induction_passed() const {
  for (const auto& r : induction)
    if (!r.holds) return false;
  return true;
}

bool AxiomReport::passed() const {
  return order.passed && successor.passed && arithmetic.passed && induction_passed();
}

std::string designated_variable(const Formula& phi) {
  auto free = free_variables(phi);
  if (free.size() != 1)
    throw std::invalid_argument("induction formula must have exactly one free variable, " + to_string(phi) + " has " +
                                std::to_string(free.size()));
  return *free.begin();
}

namespace {

std::string show(const std::optional<Numeral>& v) { return v ? v->str() : "undefined"; }

void check_order(const Structure& s, const Numeral& largest, const SamplingPolicy& policy, AxiomReport& report) {
  CheckGroup& g = report.order;
  const std::size_t n = s.size();
  if (n == 0) {
    g.fail("empty universe");
    return;
  }
  auto zero = s.zero();
  if (!zero) g.fail("constant 0 does not denote");
  else if (*zero != s.element(0)) g.fail("0 = " + zero->str() + " is not the least element " + s.element(0).str());
  if (largest != s.element(n - 1)) g.fail("N = " + largest.str() + " is not the largest element " + s.element(n - 1).str());
  // Consecutive elements form a strictly increasing chain.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Numeral a = s.element(i), b = s.element(i + 1);
    ++g.checked;
    if (!s.less(a, b) || s.less(b, a)) g.fail("order not strict between " + a.str() + " and " + b.str());
  }
  // Trichotomy over pairs.
  for_each_pair(n, policy, [&](std::uint64_t i, std::uint64_t j) {
    const Numeral a = s.element(i), b = s.element(j);
    ++g.checked;
    const int cases = int(s.less(a, b)) + int(s.less(b, a)) + int(a == b);
    if (cases != 1) g.fail("trichotomy fails for " + a.str() + ", " + b.str());
  });
}

void check_successor(const Structure& s, const Numeral& largest, AxiomReport& report) {
  CheckGroup& g = report.successor;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Numeral x = s.element(i);
    if (x == largest) continue;
    ++g.checked;
    auto next = s.succ(x);
    if (!next) {
      g.fail("succ(" + x.str() + ") undefined although " + x.str() + " < N");
    } else if (i + 1 >= n || *next != s.element(i + 1)) {
      g.fail("succ(" + x.str() + ") = " + next->str() + " is not the immediate successor");
    }
  }
}

// The recursion identities, read as: if the right-hand side is defined then
// so is the left-hand side, with the same value.
void check_arithmetic(const Structure& s, const SamplingPolicy& policy, AxiomReport& report) {
  CheckGroup& g = report.arithmetic;
  const std::size_t n = s.size();
  auto zero = s.zero();
  if (zero) {
    for (std::size_t i = 0; i < n; ++i) {
      const Numeral x = s.element(i);
      g.checked += 2;
      auto sum = s.plus(x, *zero);
      if (sum != x) g.fail(x.str() + " + 0 = " + show(sum));
      auto prod = s.times(x, *zero);
      if (prod != zero) g.fail(x.str() + " * 0 = " + show(prod));
    }
  }
  // Recursion instances range over m < N, where the term m + 1 denotes.
  report.mode = for_each_pair(n, policy, [&](std::uint64_t i, std::uint64_t j) {
    const Numeral a = s.element(i), b = s.element(j);
    auto b1 = s.succ(b);
    if (!b1) return;
    g.checked += 2;
    if (auto ab = s.plus(a, b)) {
      if (auto rhs = s.succ(*ab)) {
        auto lhs = s.plus(a, *b1);
        if (lhs != rhs)
          g.fail(a.str() + " + (" + b.str() + " + 1) = " + show(lhs) + " but (" + a.str() + " + " + b.str() + ") + 1 = " +
                 rhs->str());
      }
    }
    if (auto ab = s.times(a, b)) {
      if (auto rhs = s.plus(*ab, a)) {
        auto lhs = s.times(a, *b1);
        if (lhs != rhs)
          g.fail(a.str() + " * (" + b.str() + " + 1) = " + show(lhs) + " but " + a.str() + " * " + b.str() + " + " +
                 a.str() + " = " + rhs->str());
      }
    }
  });
}

}  // namespace

AxiomReport check_fa_axioms(const FAModel& m, const std::vector<Formula>& induction_corpus,
                            const SamplingPolicy& policy) {
  // Validate the corpus before doing any work.
  std::vector<std::pair<Formula, std::string>> instances;
  for (const auto& phi : induction_corpus) {
    if (!is_first_order(phi)) throw std::invalid_argument("induction formula is modal: " + to_string(phi));
    instances.emplace_back(phi, designated_variable(phi));
  }

  AxiomReport report;
  const Structure& s = m.structure();
  check_order(s, m.largest(), policy, report);
  check_successor(s, m.largest(), report);
  check_arithmetic(s, policy, report);
  for (const auto& [phi, v] : instances) {
    const Formula instance = induction_instance(phi, v);
    report.induction.push_back({to_string(phi), v, eval_formula(s, instance)});
  }
  return report;
}

}  // namespace fa
