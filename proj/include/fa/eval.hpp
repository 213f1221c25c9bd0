#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fa/formula.hpp"
#include "fa/model.hpp"

namespace fa {

/// Finite map from variable names to individuals.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<std::pair<const std::string, Numeral>> init) : values_(init) {}

  Assignment& set(const std::string& var, Numeral value) {
    values_[var] = std::move(value);
    return *this;
  }
  const Numeral* find(const std::string& var) const {
    auto it = values_.find(var);
    return it == values_.end() ? nullptr : &it->second;
  }
  const std::map<std::string, Numeral>& values() const { return values_; }

 private:
  std::map<std::string, Numeral> values_;
};

class UnassignedVariable : public std::invalid_argument {
 public:
  explicit UnassignedVariable(const std::string& var) : std::invalid_argument("unassigned variable '" + var + "'") {}
};

/// Raised when the first-order evaluator meets dia/box.
class WrongEvaluator : public std::logic_error {
 public:
  WrongEvaluator() : std::logic_error("modal operator encountered; use the modal evaluator (eval_modal)") {}
};

/// Variable bindings during evaluation: a stack searched from the top, so
/// inner quantifiers shadow outer ones.
class Env {
 public:
  Env() = default;
  explicit Env(const Assignment& a);
  Env(const Env&) = delete;
  Env& operator=(const Env&) = delete;

  /// `var` must outlive the binding (it normally lives in a formula node).
  void push(const std::string& var, Numeral value) { slots_.emplace_back(&var, std::move(value)); }
  void pop() { slots_.pop_back(); }
  Numeral& innermost() { return slots_.back().second; }
  const Numeral* find(const std::string& var) const;
  const Numeral& get(const std::string& var) const;
  Assignment snapshot() const;

 private:
  std::vector<std::string> initial_names_;
  std::vector<std::pair<const std::string*, Numeral>> slots_;
};

/// Where a formula is being evaluated: a structure, and for modal systems
/// the index of its world.
struct World {
  const Structure* structure;
  std::size_t index = 0;
};

/// Two-valued evaluation with the negative convention for undefined terms:
/// an atom with an undefined argument is false, Def(t) is the explicit
/// definedness test. Bounded quantifiers range over individuals below the
/// bound's value; an undefined bound makes E false and A true.
class Evaluator {
 public:
  virtual ~Evaluator() = default;

  std::optional<Numeral> value(const World& w, const Term& t, const Env& env);
  bool holds(const World& w, const Formula& f, Env& env);

  /// A witness/counterexample trace explaining the truth value of f.
  std::vector<std::string> explain(const World& w, const Formula& f, Env& env);

  /// Number of atom arguments or bounds found undefined since construction.
  std::size_t undefined_terms() const { return undefined_terms_; }

 protected:
  virtual bool holds_modal(const World& w, const Formula& f, Env& env);
  virtual void explain_modal(const World& w, const Formula& f, Env& env, bool truth, std::vector<std::string>& out,
                             int indent);
  void explain_into(const World& w, const Formula& f, Env& env, std::vector<std::string>& out, int indent);

 private:
  std::optional<Numeral> argument(const World& w, const Term& t, const Env& env);
  bool quantifier(const World& w, const Formula& f, Env& env);

  std::size_t undefined_terms_ = 0;
};

std::optional<Numeral> eval_term(const Structure& m, const Term& t, const Assignment& a = {});

/// Throws WrongEvaluator on modal input, UnassignedVariable for a free
/// variable missing from `a`, DomainError if `a` names a non-individual.
bool eval_formula(const Structure& m, const Formula& f, const Assignment& a = {});

struct CheckedTruth {
  bool value;
  /// No undefined term was met during evaluation.
  bool total;
};
CheckedTruth eval_formula_checked(const Structure& m, const Formula& f, const Assignment& a = {});

std::vector<std::string> explain_formula(const Structure& m, const Formula& f, const Assignment& a = {});

}  // namespace fa
