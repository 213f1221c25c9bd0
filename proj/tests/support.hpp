#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fa/formula.hpp"
#include "fa/model.hpp"

namespace fa::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_); }
  bool coin() { return below(2) == 1; }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

 private:
  std::mt19937_64 engine_;
};

struct FormulaShape {
  std::size_t depth = 3;
  std::size_t term_depth = 2;
  bool modal = false;
  bool unbounded = true;
  bool bounded = true;
  bool top = true;
  /// Only atoms, &, |, E and dia: the existential-positive fragment.
  bool positive = false;
};

inline Term random_term(Rng& rng, const std::vector<std::string>& vars, std::size_t depth, bool top = true) {
  const std::uint64_t leaf_kinds = vars.empty() ? 2 : 3;
  if (depth == 0 || rng.below(3) == 0) {
    switch (rng.below(leaf_kinds + (top ? 1 : 0))) {
      case 0: return Term::zero();
      case 1: return Term::one();
      case 2: return vars.empty() ? Term::top() : Term::var(rng.pick(vars));
      default: return Term::top();
    }
  }
  switch (rng.below(3)) {
    case 0: return Term::sum(random_term(rng, vars, depth - 1, top), random_term(rng, vars, depth - 1, top));
    case 1: return Term::prod(random_term(rng, vars, depth - 1, top), random_term(rng, vars, depth - 1, top));
    default: return Term::succ(random_term(rng, vars, depth - 1, top));
  }
}

namespace detail {

inline Formula random_atom(Rng& rng, const std::vector<std::string>& vars, const FormulaShape& s) {
  auto t = [&] { return random_term(rng, vars, s.term_depth, s.top); };
  switch (rng.below(5)) {
    case 0: return Formula::eq(t(), t());
    case 1: return Formula::lt(t(), t());
    case 2: return Formula::defined(t());
    case 3: return Formula::plus_atom(t(), t(), t());
    default: return Formula::times_atom(t(), t(), t());
  }
}

inline Formula random_formula(Rng& rng, std::vector<std::string>& vars, std::size_t depth, const FormulaShape& s,
                              std::size_t& fresh) {
  if (depth == 0 || rng.below(4) == 0) return random_atom(rng, vars, s);
  const std::uint64_t choice = rng.below(s.positive ? 4 : 8);
  auto sub = [&] { return random_formula(rng, vars, depth - 1, s, fresh); };
  auto quantified = [&](bool universal) {
    const std::string v = "v" + std::to_string(fresh++);
    std::optional<Term> bound;
    const bool use_bound = s.bounded && (!s.unbounded || rng.coin());
    if (use_bound) bound = random_term(rng, vars, 1, s.top);
    vars.push_back(v);
    Formula body = sub();
    vars.pop_back();
    return universal ? Formula::forall(v, bound, body) : Formula::exists(v, bound, body);
  };
  if (s.positive) {
    switch (choice) {
      case 0: return Formula::conjunction(sub(), sub());
      case 1: return Formula::disjunction(sub(), sub());
      case 2: return quantified(false);
      default: return s.modal ? Formula::possibly(sub()) : quantified(false);
    }
  }
  switch (choice) {
    case 0: return Formula::negation(sub());
    case 1: return Formula::conjunction(sub(), sub());
    case 2: return Formula::disjunction(sub(), sub());
    case 3: return Formula::implication(sub(), sub());
    case 4: return quantified(false);
    case 5: return quantified(true);
    case 6: return s.modal ? Formula::possibly(sub()) : quantified(rng.coin());
    default: return s.modal ? Formula::necessarily(sub()) : Formula::negation(sub());
  }
}

}  // namespace detail

/// Random formula whose free variables are among `free`.
inline Formula random_formula(Rng& rng, std::vector<std::string> free, const FormulaShape& s = {}) {
  std::size_t fresh = 0;
  return detail::random_formula(rng, free, s.depth, s, fresh);
}

inline std::vector<Numeral> random_subset(Rng& rng, std::uint64_t max_value, std::size_t max_size) {
  std::vector<Numeral> xs;
  const std::size_t n = rng.below(max_size + 1);
  for (std::size_t i = 0; i < n; ++i) xs.emplace_back(rng.below(max_value + 1));
  return xs;
}

}  // namespace fa::testing
