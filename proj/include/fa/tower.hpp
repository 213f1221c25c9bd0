#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fa/interp.hpp"

namespace fa {

/// M = T0, T1 = T0+, T2 = T1+, ... with the initial-segment embeddings
/// T_i -> T_{i+1}. Stage i >= 1 is the value presentation of an interpreted
/// model over stage i-1, so its operations run the digit algorithms.
class Tower {
 public:
  struct Stage {
    FAModel model;
    /// Present from stage 1 on: the construction producing this stage.
    std::optional<InterpretedModel> lift;
    /// Present from stage 1 on: the embedding of stage i-1 into this stage.
    std::optional<InitialEmbedding> embedding;
  };

  explicit Tower(FAModel ground) { stages_.push_back({std::move(ground), std::nullopt, std::nullopt}); }

  /// Appends the M+ of the current top stage. Throws InadmissibleParams.
  void grow(std::size_t width);

  std::size_t size() const { return stages_.size(); }
  const Stage& stage(std::size_t i) const { return stages_.at(i); }
  const FAModel& model(std::size_t i) const { return stages_.at(i).model; }
  const Numeral& height(std::size_t i) const { return stages_.at(i).model.largest(); }
  std::vector<Numeral> heights() const;

  /// Image of a stage-`from` individual at stage `to` >= from, through the
  /// composed embeddings.
  Numeral lift_element(const Numeral& x, std::size_t from, std::size_t to) const;

 private:
  std::vector<Stage> stages_;
};

/// The ground model with `stages` interpreted stages on top, each of width k.
Tower build_tower(const FAModel& m, std::size_t stages, std::size_t width = 5);

enum class LimitOp { Plus, Times };

struct LimitValue {
  /// The value, as the individual of stage `stage` (its valuation).
  Numeral value;
  std::size_t stage;
  /// Its digit string when stage >= 1.
  std::optional<DigitString> string;
};

class TowerExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluates x op y for ground elements at the least stage where it is
/// defined. Throws TowerExhausted if no stage defines it.
LimitValue limit_eval(const Tower& tower, LimitOp op, const Numeral& x, const Numeral& y);

struct BoundedInductionEntry {
  std::size_t stage;
  std::string formula;
  /// "induction" or "absoluteness".
  std::string kind;
  bool holds;
  std::string detail;
};

struct BoundedInductionReport {
  std::vector<BoundedInductionEntry> entries;
  bool passed() const;
};

/// For every stage and every corpus formula with one free variable: its
/// induction instance holds there. For every closed corpus sentence and
/// consecutive stages i, i+1: when every term met while evaluating at stage
/// i is defined (the bounds lie within stage i), the truth values agree.
/// Throws std::invalid_argument for a non-Delta0 formula or one with more
/// than one free variable.
BoundedInductionReport check_bounded_induction(const Tower& tower, const std::vector<Formula>& corpus);

}  // namespace fa
