#include "fa/numeral.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace fa {

Numeral parse_numeral(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty numeral");
  Numeral n = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("not a nonnegative numeral: " + std::string(text));
    n = n * 10 + (c - '0');
  }
  return n;
}

Numeral isqrt(const Numeral& n) {
  if (n < 0) throw std::domain_error("isqrt of negative value");
  return boost::multiprecision::sqrt(n);
}

std::size_t to_size(const Numeral& n) {
  if (n < 0 || n > std::numeric_limits<std::size_t>::max())
    throw std::length_error("value does not fit a size: " + n.str());
  return n.convert_to<std::size_t>();
}

}  // namespace fa
