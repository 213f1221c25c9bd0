#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fa/digits.hpp"
#include "fa/formula.hpp"
#include "fa/model.hpp"
#include "fa/sampling.hpp"

namespace fa {

class InadmissibleParams : public std::invalid_argument {
 public:
  InadmissibleParams(const InterpParams& p, const Numeral& largest, std::optional<std::size_t> minimal);
  /// Smallest admissible width for this base, if any.
  std::optional<std::size_t> minimal_width() const { return minimal_; }

 private:
  std::optional<std::size_t> minimal_;
};

/// M+ : the width-k base-b digit strings over a ground FA model.
///
/// arithmetic() works on strings directly. model() presents the same
/// structure as an FAModel whose handles are the strings' values, so that
/// the axiom checker, the evaluator and later tower stages can consume it;
/// every operation of model() decodes its arguments and runs the digit
/// algorithms.
class InterpretedModel {
 public:
  InterpretedModel(FAModel ground, std::shared_ptr<const DigitArithmetic> arithmetic);

  const FAModel& ground() const { return ground_; }
  const DigitArithmetic& arithmetic() const { return *arithmetic_; }
  const InterpParams& params() const { return arithmetic_->params(); }
  const FAModel& model() const { return model_; }

  /// Handle in model() of a string, and back.
  Numeral handle(const DigitString& s) const { return arithmetic_->value(s); }
  DigitString string(const Numeral& handle) const { return arithmetic_->from_value(handle); }

 private:
  FAModel ground_;
  std::shared_ptr<const DigitArithmetic> arithmetic_;
  FAModel model_;
};

/// Builds M+ over m with b = largest_square_base(m). Throws
/// InadmissibleParams when b^k - 1 < N^2.
InterpretedModel build_plus_model(const FAModel& m, std::size_t width = 5);
/// Same with an explicit base, which must be an individual of m with b*b
/// defined there. The ground model is only queried on digits.
InterpretedModel build_plus_model(const FAModel& m, const InterpParams& params);

/// Initial-segment embedding of a ground model into its M+, built by
/// counting: 0 goes to 00000 and each successor to the digit successor.
class InitialEmbedding {
 public:
  /// images[i] is the image of the i-th ground element.
  InitialEmbedding(FAModel ground, std::vector<DigitString> images);

  const FAModel& ground() const { return ground_; }
  const std::vector<DigitString>& images() const { return images_; }
  /// Throws DomainError for x outside the ground model.
  const DigitString& operator()(const Numeral& x) const;

 private:
  FAModel ground_;
  std::vector<DigitString> images_;
};

InitialEmbedding embed_initial(const FAModel& m, const InterpretedModel& plus);

/// The (x div b, x mod b) description of the embedding, with a 1 in the third
/// digit from the right for x >= b^2. Computed with Numeral arithmetic; a
/// test-side description, not used by the construction.
DigitString expected_image(const InterpParams& p, const Numeral& x);

struct BiinterpReport {
  CheckMode mode = CheckMode::Exhaustive;
  /// The embedded copy is an isomorphic, downward closed substructure.
  CheckGroup substructure{"substructure"};
  /// Every element equals the sum of e(d_j) * e(b)^j computed in M+.
  CheckGroup representation{"representation"};
  /// Decoding an image inside the ground model returns the element.
  CheckGroup round_trip{"round-trip"};

  bool passed() const { return substructure.passed && representation.passed && round_trip.passed; }
};

BiinterpReport verify_biinterpretation(const FAModel& m, const InterpretedModel& plus, const InitialEmbedding& e,
                                       const SamplingPolicy& policy = {});
BiinterpReport verify_biinterpretation(const FAModel& m, const InterpretedModel& plus,
                                       const SamplingPolicy& policy = {});

struct LiftReport {
  CheckMode valuation_mode = CheckMode::Exhaustive;
  CheckMode totality_mode = CheckMode::Exhaustive;
  /// M+ against N|(b^k - 1) computed with Numeral arithmetic, by valuation.
  CheckGroup valuation{"valuation"};
  /// e(N) * e(N) is defined in M+.
  CheckGroup square{"square"};
  /// e(x) + e(y) and e(x) * e(y) are defined in M+ for all ground x, y.
  CheckGroup totality{"totality"};

  bool passed() const { return valuation.passed && square.passed && totality.passed; }
};

LiftReport verify_lift(const FAModel& m, const InterpretedModel& plus, const InitialEmbedding& e,
                       const SamplingPolicy& policy = {});

/// The lexically least string at which phi fails, found by fixing the digits
/// from the most significant one down, each to the least value that still
/// admits a failing completion. Absent when phi holds throughout M+.
/// Throws std::invalid_argument unless phi is first-order with exactly one
/// free variable.
std::optional<DigitString> verify_induction_lex(const InterpretedModel& plus, const Formula& phi);

/// Wraps a structure and records every operation request, to confirm that
/// the digit construction stays below b.
class InstrumentedStructure final : public Structure {
 public:
  explicit InstrumentedStructure(StructurePtr inner) : inner_(std::move(inner)) {}

  std::size_t size() const override { return inner_->size(); }
  Numeral element(std::size_t i) const override { return inner_->element(i); }
  bool contains(const Numeral& x) const override { return inner_->contains(x); }
  std::size_t rank(const Numeral& x) const override { return inner_->rank(x); }
  bool less(const Numeral& a, const Numeral& b) const override { return inner_->less(a, b); }
  std::optional<Numeral> plus(const Numeral& a, const Numeral& b) const override;
  std::optional<Numeral> times(const Numeral& a, const Numeral& b) const override;
  std::optional<Numeral> zero() const override { return inner_->zero(); }
  std::optional<Numeral> one() const override { return inner_->one(); }
  std::optional<Numeral> top() const override { return inner_->top(); }
  std::string describe() const override { return inner_->describe(); }

  std::size_t requests() const { return requests_; }
  /// Largest operand seen in any plus/times request.
  const std::optional<Numeral>& largest_operand() const { return largest_operand_; }

 private:
  void note(const Numeral& a, const Numeral& b) const;

  StructurePtr inner_;
  // Not synchronized; instrument one construction at a time.
  mutable std::size_t requests_ = 0;
  mutable std::optional<Numeral> largest_operand_;
};

}  // namespace fa
