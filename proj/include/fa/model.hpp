#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fa/numeral.hpp"

namespace fa {

/// An argument outside the universe of the structure. Distinct from a
/// defined-domain pair that simply has no value.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A finite universe of individuals with the numerical order and partial
/// addition and multiplication, read as graph relations.
///
/// Handles are Numerals. For every implementation in this library the order
/// given by less() agrees with the numeric order of the handles, and
/// element(i) enumerates the universe in increasing order.
class Structure {
 public:
  virtual ~Structure() = default;

  virtual std::size_t size() const = 0;
  /// The i-th individual in increasing order.
  virtual Numeral element(std::size_t index) const = 0;
  virtual bool contains(const Numeral& x) const = 0;
  /// Number of individuals below the individual x.
  virtual std::size_t rank(const Numeral& x) const;

  /// Throws DomainError if either argument is outside the universe.
  virtual bool less(const Numeral& a, const Numeral& b) const = 0;
  /// The unique c with (a,b,c) in the addition graph, if any.
  virtual std::optional<Numeral> plus(const Numeral& a, const Numeral& b) const = 0;
  virtual std::optional<Numeral> times(const Numeral& a, const Numeral& b) const = 0;

  virtual std::optional<Numeral> zero() const = 0;
  virtual std::optional<Numeral> one() const = 0;
  /// The constant N; present only for models of finite arithmetic.
  virtual std::optional<Numeral> top() const { return std::nullopt; }

  /// Short human-readable name, e.g. "N|10" or "{0,2,4}".
  virtual std::string describe() const = 0;

  /// plus(a, 1); undefined when 1 is not an individual.
  std::optional<Numeral> succ(const Numeral& a) const;

  void require_member(const Numeral& x) const;
};

using StructurePtr = std::shared_ptr<const Structure>;

struct Triple {
  Numeral a, b, c;
  friend bool operator==(const Triple&, const Triple&) = default;
};

/// Exhaustive graph listings, ordered by (a, b). Quadratic; for small worlds.
std::vector<Triple> plus_graph(const Structure& s);
std::vector<Triple> times_graph(const Structure& s);

/// A Structure known to model finite arithmetic: its universe is an order
/// with least element 0 and a designated largest element N.
class FAModel {
 public:
  /// Throws std::invalid_argument unless the structure reports top().
  explicit FAModel(StructurePtr structure);

  /// Presents an arbitrary structure with an explicitly chosen N, e.g. to run
  /// the axiom checks against a subset world. N must be an individual.
  static FAModel presented(StructurePtr structure, Numeral largest);

  const Structure& structure() const { return *structure_; }
  const StructurePtr& shared() const { return structure_; }
  const Numeral& largest() const { return largest_; }

  // Forwarding conveniences.
  std::optional<Numeral> plus(const Numeral& a, const Numeral& b) const { return structure_->plus(a, b); }
  std::optional<Numeral> times(const Numeral& a, const Numeral& b) const { return structure_->times(a, b); }
  std::optional<Numeral> succ(const Numeral& a) const { return structure_->succ(a); }
  bool less(const Numeral& a, const Numeral& b) const { return structure_->less(a, b); }
  std::size_t size() const { return structure_->size(); }

 private:
  FAModel(StructurePtr structure, Numeral largest);

  StructurePtr structure_;
  Numeral largest_;
};

/// The truncation N|n of the standard model: universe {0..n}, operations
/// defined exactly when the result is at most n. Rejects n = 0.
FAModel make_truncation(const Numeral& n);

/// The induced substructure of the standard model on a finite set.
StructurePtr make_subset_world(std::vector<Numeral> individuals);

/// Largest b with b*b defined, found with the model's own multiplication.
Numeral largest_square_base(const FAModel& m);

}  // namespace fa
