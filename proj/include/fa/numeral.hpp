#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fa {

/// Exact integer of unbounded magnitude. Every individual of every structure
/// in this library is named by a nonnegative Numeral.
using Numeral = boost::multiprecision::cpp_int;

inline std::string to_string(const Numeral& n) { return n.str(); }

/// Parses a nonnegative decimal numeral. Throws std::invalid_argument.
Numeral parse_numeral(std::string_view text);

/// Largest r with r*r <= n.
Numeral isqrt(const Numeral& n);

/// Narrowing conversion used for domain sizes; throws std::length_error when
/// the value does not fit.
std::size_t to_size(const Numeral& n);

}  // namespace fa
