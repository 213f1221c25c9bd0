#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fa {

/// Terms of the language {+, *, 0, 1, N}. Immutable; copies share structure.
class Term {
 public:
  enum class Kind { Var, Zero, One, Top, Sum, Prod, Succ };

  static Term var(std::string name);
  static Term zero();
  static Term one();
  static Term top();
  static Term sum(Term lhs, Term rhs);
  static Term prod(Term lhs, Term rhs);
  static Term succ(Term operand);

  Kind kind() const;
  /// Variable name; empty for other kinds.
  const std::string& name() const;
  /// Left operand of Sum/Prod, the operand of Succ.
  const Term& lhs() const;
  const Term& rhs() const;

  bool is_compound() const;
  const void* id() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Formulas with definedness and graph atoms, bounded and unbounded
/// quantifiers, and the modal operators dia/box.
class Formula {
 public:
  enum class Kind {
    Eq, Lt, Defined, PlusAtom, TimesAtom,
    Not, And, Or, Implies,
    Forall, Exists,
    Possibly, Necessarily,
  };

  static Formula eq(Term a, Term b);
  static Formula lt(Term a, Term b);
  static Formula defined(Term t);
  static Formula plus_atom(Term a, Term b, Term c);
  static Formula times_atom(Term a, Term b, Term c);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  /// Throws std::invalid_argument if `var` occurs in the bound.
  static Formula forall(std::string var, std::optional<Term> bound, Formula body);
  static Formula exists(std::string var, std::optional<Term> bound, Formula body);
  static Formula possibly(Formula f);
  static Formula necessarily(Formula f);

  Kind kind() const;
  bool is_atom() const;
  bool is_quantifier() const;
  bool is_modal_operator() const;

  /// Atom arguments (1 to 3 terms).
  const std::vector<Term>& terms() const;
  /// Operand of Not/Possibly/Necessarily, left operand of binaries, body of quantifiers.
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const { return lhs(); }
  const std::string& var() const;
  const std::optional<Term>& bound() const;

  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::set<std::string> free_variables(const Term& t);
std::set<std::string> free_variables(const Formula& f);
bool mentions_top(const Term& t);
bool mentions_top(const Formula& f);

/// No modal node anywhere.
bool is_first_order(const Formula& f);
/// First-order and every quantifier bounded.
bool is_delta0(const Formula& f);
std::size_t depth(const Formula& f);

/// Capture-avoiding substitution of `replacement` for the free occurrences
/// of `var`. Bound variables are renamed (x_1, x_2, ...) when needed.
Term substitute(const Term& t, const std::string& var, const Term& replacement);
Formula substitute(const Formula& f, const std::string& var, const Term& replacement);

/// [phi(0) & A v < N. (phi(v) -> phi(v + 1))] -> A v. phi(v).
/// Throws std::invalid_argument if phi is modal or v is not free in phi.
Formula induction_instance(const Formula& phi, const std::string& v);

/// Canonical text in the ASCII grammar; parse_formula(to_string(f)) == f.
std::string to_string(const Term& t);
std::string to_string(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Term& t);
std::ostream& operator<<(std::ostream& os, const Formula& f);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);

/// Formula corpus files: one formula per line, '#' starts a comment.
std::vector<Formula> parse_corpus(std::string_view text);
std::vector<Formula> load_corpus(const std::string& path);

}  // namespace fa
