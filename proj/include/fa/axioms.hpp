#pragma once

#include <string>
#include <vector>

#include "fa/formula.hpp"
#include "fa/model.hpp"
#include "fa/sampling.hpp"

namespace fa {

struct InductionResult {
  std::string formula;
  std::string variable;
  bool holds = false;
};

struct AxiomReport {
  CheckMode mode = CheckMode::Exhaustive;
  CheckGroup order{"order"};
  CheckGroup successor{"successor"};
  CheckGroup arithmetic{"arithmetic"};
  std::vector<InductionResult> induction;

  bool induction_passed() const;
  bool passed() const;
};

/// The unique free variable of an induction corpus formula. Throws
/// std::invalid_argument unless there is exactly one.
std::string designated_variable(const Formula& phi);

/// Instance-checks the FA axioms on m: order (discrete linear order from 0
/// to N), successor (n+1 defined and immediate for n < N), the recursion
/// identities for + and * read in the Kleene sense, and the induction
/// instance of every corpus formula.
AxiomReport check_fa_axioms(const FAModel& m, const std::vector<Formula>& induction_corpus,
                            const SamplingPolicy& policy = {});

}  // namespace fa
