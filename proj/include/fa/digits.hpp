#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "fa/model.hpp"

namespace fa {

/// Base and width of the digit-string interpretation. `base` is an
/// individual of the ground model.
struct InterpParams {
  Numeral base;
  std::size_t width = 5;

  friend bool operator==(const InterpParams&, const InterpParams&) = default;
};

/// b^k - 1, the largest value a width-k string can carry.
Numeral capacity(const InterpParams& p);

/// b >= 2, k >= 2 and b^k - 1 >= N^2.
bool admissible(const InterpParams& p, const Numeral& largest);

/// Smallest k >= 2 admissible for (b, N); none when b < 2.
std::optional<std::size_t> minimal_width(const Numeral& base, const Numeral& largest);

using Digits = boost::container::small_vector<std::uint32_t, 8>;

/// Fixed-width base-b digit sequence, most significant digit first. A digit
/// is its position in the ground model's counting order 0, 1, ..., b-1.
class DigitString {
 public:
  /// Throws std::invalid_argument on a wrong length or a digit >= b.
  DigitString(InterpParams params, Digits digits);

  InterpParams params() const { return {Numeral(base_), digits_.size()}; }
  std::uint32_t base() const { return base_; }
  const Digits& digits() const { return digits_; }
  std::size_t width() const { return digits_.size(); }

  /// "00345" for bases up to 10, "0:0:3:14:2" above.
  std::string str() const;

  friend bool operator==(const DigitString& a, const DigitString& b) {
    return a.base_ == b.base_ && a.digits_ == b.digits_;
  }

 private:
  friend class DigitArithmetic;
  struct Trusted {};
  DigitString(Trusted, std::uint32_t base, Digits digits) : base_(base), digits_(std::move(digits)) {}

  std::uint32_t base_;
  Digits digits_;
};

/// Parses the str() form back. Throws std::invalid_argument.
DigitString parse_digit_string(const InterpParams& p, const std::string& text);

/// Grade-school arithmetic on width-k strings over a ground model.
///
/// The constructor is the only place the ground model is consulted. It counts
/// out the digits 0..b-1 with the ground successor and asks the ground model
/// for x+y and x*y on every digit pair; the carry/digit split of each answer
/// is found by counting (sums) and repeated table addition (products), and
/// cross-checked against the ground results. Every operand handed to the
/// ground model is a digit, so below b. After construction all string
/// operations are table lookups.
class DigitArithmetic {
 public:
  /// Throws std::invalid_argument if b is not reached by counting from 0 or
  /// b, k < 2, and std::logic_error if the ground model contradicts itself.
  DigitArithmetic(StructurePtr ground, InterpParams params);

  const InterpParams& params() const { return params_; }
  const Structure& ground() const { return *ground_; }
  std::uint32_t base() const { return base_; }
  /// Ground individual naming digit d.
  const Numeral& digit_handle(std::uint32_t d) const { return handles_.at(d); }
  /// Digit named by a ground individual below b. Throws DomainError.
  std::uint32_t digit_of(const Numeral& handle) const;

  DigitString zero() const;
  DigitString one() const;
  /// The all-(b-1) string.
  DigitString top() const;

  /// Lexical order, most significant digit first.
  bool less(const DigitString& s, const DigitString& t) const;
  /// Absent exactly at top().
  std::optional<DigitString> succ(const DigitString& s) const;
  /// Absent exactly on a carry out of the leading column.
  std::optional<DigitString> plus(const DigitString& s, const DigitString& t) const;
  /// Absent exactly when the product needs more than k digits.
  std::optional<DigitString> times(const DigitString& s, const DigitString& t) const;

  // Valuation, for oracles and adapters only.
  Numeral value(const DigitString& s) const;
  /// Throws std::out_of_range when v >= b^k.
  DigitString from_value(const Numeral& v) const;

 private:
  struct Split {
    std::uint32_t high;
    std::uint32_t low;
  };

  void require_params(const DigitString& s) const;
  DigitString make(Digits digits) const { return DigitString(DigitString::Trusted{}, base_, std::move(digits)); }
  const Split& sum(std::uint32_t x, std::uint32_t y) const { return sums_[std::size_t(x) * base_ + y]; }
  const Split& product(std::uint32_t x, std::uint32_t y) const { return products_[std::size_t(x) * base_ + y]; }
  /// Adds digit d into column `col` (from the least significant end) of a
  /// little-endian accumulator, propagating carries. False on overflow.
  bool add_at(Digits& acc, std::size_t col, std::uint32_t d) const;

  StructurePtr ground_;
  InterpParams params_;
  std::uint32_t base_ = 0;
  Numeral capacity_;
  /// b^k - 1 when it fits in 64 bits, else 0.
  std::uint64_t capacity64_ = 0;
  std::vector<Numeral> handles_;
  std::vector<Split> sums_;
  std::vector<Split> products_;
};

}  // namespace fa
