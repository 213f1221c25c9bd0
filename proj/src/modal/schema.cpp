#include <algorithm>
#include <cctype>

#include "fa/modal.hpp"

namespace fa {

const char* to_string(Schema s) {
  switch (s) {
    case Schema::K: return "K";
    case Schema::T: return "T";
    case Schema::Four: return "4";
    case Schema::Dot2: return ".2";
    case Schema::Dot3: return ".3";
  }
  return "?";
}

Schema parse_schema(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  if (n == "k") return Schema::K;
  if (n == "t") return Schema::T;
  if (n == "four" || n == "4") return Schema::Four;
  if (n == "dot2" || n == ".2") return Schema::Dot2;
  if (n == "dot3" || n == ".3") return Schema::Dot3;
  throw std::invalid_argument("unknown schema '" + name + "' (expected K, T, 4, .2 or .3)");
}

Formula instantiate(Schema s, const Formula& phi, const Formula& psi) {
  using F = Formula;
  switch (s) {
    case Schema::K:
      return F::implication(F::necessarily(F::implication(phi, psi)),
                            F::implication(F::necessarily(phi), F::necessarily(psi)));
    case Schema::T: return F::implication(F::necessarily(phi), phi);
    case Schema::Four: return F::implication(F::necessarily(phi), F::necessarily(F::necessarily(phi)));
    case Schema::Dot2:
      return F::implication(F::possibly(F::necessarily(phi)), F::necessarily(F::possibly(phi)));
    case Schema::Dot3:
      return F::implication(F::conjunction(F::possibly(phi), F::possibly(psi)),
                            F::disjunction(F::possibly(F::conjunction(phi, F::possibly(psi))),
                                           F::possibly(F::conjunction(psi, F::possibly(phi)))));
  }
  throw std::invalid_argument("unknown schema");
}

std::vector<SchemaFailure> check_schema(const PotentialistSystem& sys, Schema s,
                                        const std::vector<std::pair<Formula, Formula>>& instances) {
  std::vector<SchemaFailure> out;
  ModalEvaluator e(sys);
  for (const auto& [phi, psi] : instances) {
    Formula inst = instantiate(s, phi, psi);
    if (!free_variables(inst).empty())
      throw std::invalid_argument("schema instance is not closed: " + to_string(inst));
    for (std::size_t w = 0; w < sys.size(); ++w)
      if (!e.holds_at(w, inst)) out.push_back({w, phi, psi, inst});
  }
  return out;
}

std::vector<Formula> generate_formulas(std::size_t max_depth, std::size_t budget) {
  std::vector<Formula> out;
  if (max_depth == 0 || budget == 0) return out;
  for (const Term& t : {Term::zero(), Term::one(), Term::sum(Term::one(), Term::one())}) {
    if (out.size() == budget) return out;
    out.push_back(Formula::defined(t));
  }
  std::size_t level_begin = 0;
  for (std::size_t d = 2; d <= max_depth; ++d) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (int op = 0; op < 3; ++op) {
        if (out.size() == budget) return out;
        const Formula& f = out[i];
        out.push_back(op == 0 ? Formula::negation(f) : op == 1 ? Formula::possibly(f) : Formula::necessarily(f));
      }
    }
    for (std::size_t i = 0; i < level_end; ++i) {
      for (std::size_t j = 0; j < level_end; ++j) {
        if (i < level_begin && j < level_begin) continue;
        for (int op = 0; op < 2; ++op) {
          if (out.size() == budget) return out;
          const Formula a = out[i], b = out[j];
          out.push_back(op == 0 ? Formula::conjunction(a, b) : Formula::disjunction(a, b));
        }
      }
    }
    level_begin = level_end;
  }
  return out;
}

namespace {

using Bits = boost::dynamic_bitset<>;

// Worlds with an accessible world in x.
void diamond(const PotentialistSystem& sys, const Bits& x, Bits& out) {
  out.reset();
  for (std::size_t u = 0; u < sys.size(); ++u)
    if (sys.successors(u).intersects(x)) out.set(u);
}

}  // namespace

std::optional<Dot3Witness> search_dot3_counterexample(const PotentialistSystem& sys, const SearchOptions& opts) {
  const std::vector<Formula> fs = generate_formulas(opts.max_depth, opts.formula_budget);
  ModalEvaluator e(sys);
  const std::size_t n = sys.size();
  std::vector<Bits> truth, dia;
  truth.reserve(fs.size());
  dia.reserve(fs.size());
  for (const auto& f : fs) {
    truth.push_back(e.truth_set(f));
    dia.emplace_back(n);
    diamond(sys, truth.back(), dia.back());
  }

  Bits tmp(n), left(n), right(n), fail(n);
  std::size_t examined = 0;
  auto test = [&](std::size_t p, std::size_t q) -> std::optional<std::size_t> {
    ++examined;
    fail = dia[p] & dia[q];
    if (fail.none()) return std::nullopt;
    tmp = truth[p] & dia[q];
    diamond(sys, tmp, left);
    tmp = truth[q] & dia[p];
    diamond(sys, tmp, right);
    fail -= left;
    fail -= right;
    if (fail.none()) return std::nullopt;
    return fail.find_first();
  };

  for (std::size_t m = 0; m < fs.size(); ++m) {
    for (std::size_t i = 0; i <= m; ++i) {
      for (int flip = 0; flip < (i == m ? 1 : 2); ++flip) {
        const std::size_t p = flip ? m : i, q = flip ? i : m;
        auto w = test(p, q);
        if (!w) continue;
        if (eval_modal(sys, *w, instantiate(Schema::Dot3, fs[p], fs[q])))
          throw std::logic_error("bitset search and evaluator disagree on " + to_string(fs[p]) + ", " +
                                 to_string(fs[q]));
        return Dot3Witness{*w, fs[p], fs[q], examined};
      }
    }
  }
  return std::nullopt;
}

}  // namespace fa
