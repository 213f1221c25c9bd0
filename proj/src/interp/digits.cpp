#include "fa/digits.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace fa {

namespace {
// b^2 table entries must stay addressable.
constexpr std::uint32_t kMaxBase = 1024;
}  // namespace

Numeral capacity(const InterpParams& p) { return boost::multiprecision::pow(p.base, unsigned(p.width)) - 1; }

bool admissible(const InterpParams& p, const Numeral& largest) {
  return p.base >= 2 && p.width >= 2 && capacity(p) >= largest * largest;
}

std::optional<std::size_t> minimal_width(const Numeral& base, const Numeral& largest) {
  if (base < 2) return std::nullopt;
  const Numeral need = largest * largest;
  std::size_t k = 2;
  Numeral reach = base * base;
  while (reach - 1 < need) {
    reach *= base;
    ++k;
  }
  return k;
}

DigitString::DigitString(InterpParams params, Digits digits) : digits_(std::move(digits)) {
  if (digits_.size() != params.width)
    throw std::invalid_argument("digit string needs " + std::to_string(params.width) + " digits, got " +
                                std::to_string(digits_.size()));
  if (params.base < 2 || params.base > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("unsupported base " + params.base.str());
  base_ = params.base.convert_to<std::uint32_t>();
  for (auto d : digits_)
    if (d >= base_) throw std::invalid_argument("digit " + std::to_string(d) + " not below base " + params.base.str());
}

std::string DigitString::str() const {
  std::string out;
  if (base_ <= 10) {
    for (auto d : digits_) out += char('0' + d);
    return out;
  }
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i) out += ':';
    out += std::to_string(digits_[i]);
  }
  return out;
}

DigitString parse_digit_string(const InterpParams& p, const std::string& text) {
  Digits digits;
  auto bad = [&] { return std::invalid_argument("malformed digit string '" + text + "'"); };
  if (text.find(':') != std::string::npos || p.base > 10) {
    std::size_t start = 0;
    while (true) {
      const std::size_t end = std::min(text.find(':', start), text.size());
      const std::string part = text.substr(start, end - start);
      if (part.empty() || part.size() > 9 || !std::all_of(part.begin(), part.end(), ::isdigit)) throw bad();
      digits.push_back(std::uint32_t(std::stoul(part)));
      if (end == text.size()) break;
      start = end + 1;
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw bad();
      digits.push_back(std::uint32_t(c - '0'));
    }
  }
  return DigitString(p, std::move(digits));
}

DigitArithmetic::DigitArithmetic(StructurePtr ground, InterpParams params)
    : ground_(std::move(ground)), params_(std::move(params)) {
  if (params_.width < 2) throw std::invalid_argument("width must be at least 2");
  if (params_.base < 2) throw std::invalid_argument("base must be at least 2");
  if (params_.base > kMaxBase) throw std::invalid_argument("base " + params_.base.str() + " too large for digit tables");
  const Structure& g = *ground_;
  auto zero = g.zero();
  auto one = g.one();
  if (!zero || !one) throw std::invalid_argument("ground model lacks 0 or 1");

  // Count out the digits.
  handles_.push_back(*zero);
  while (true) {
    auto next = g.plus(handles_.back(), *one);
    if (!next) throw std::invalid_argument("base " + params_.base.str() + " not reached by counting in " + g.describe());
    if (*next == params_.base) break;
    handles_.push_back(*next);
    if (handles_.size() > kMaxBase) throw std::invalid_argument("base " + params_.base.str() + " not reached by counting");
  }
  base_ = std::uint32_t(handles_.size());
  if (Numeral(base_) != params_.base)
    throw std::invalid_argument("ground individual " + params_.base.str() + " is reached after " +
                                std::to_string(base_) + " steps");
  capacity_ = capacity(params_);
  if (capacity_ <= std::numeric_limits<std::uint64_t>::max()) capacity64_ = capacity_.convert_to<std::uint64_t>();

  std::map<Numeral, std::pair<std::uint32_t, std::uint32_t>> split_of;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Numeral> handle_of;
  auto record = [&](const std::optional<Numeral>& h, Split s, const char* op, std::uint32_t x, std::uint32_t y) {
    if (!h)
      throw std::logic_error(std::string("ground ") + op + " undefined on digits " + handles_[x].str() + ", " +
                             handles_[y].str());
    const std::pair<std::uint32_t, std::uint32_t> key{s.high, s.low};
    auto [it, fresh] = split_of.emplace(*h, key);
    auto [jt, fresh2] = handle_of.emplace(key, *h);
    if (it->second != key || jt->second != *h)
      throw std::logic_error("ground " + std::string(op) + " on digits is inconsistent at " + h->str());
  };

  sums_.resize(std::size_t(base_) * base_);
  for (std::uint32_t x = 0; x < base_; ++x) {
    Split s{0, x};
    for (std::uint32_t y = 0; y < base_; ++y) {
      record(g.plus(handles_[x], handles_[y]), s, "+", x, y);
      sums_[std::size_t(x) * base_ + y] = s;
      if (s.low + 1 == base_) s = {s.high + 1, 0};
      else ++s.low;
    }
  }

  products_.resize(std::size_t(base_) * base_);
  for (std::uint32_t x = 0; x < base_; ++x) {
    Split p{0, 0};
    for (std::uint32_t y = 0; y < base_; ++y) {
      record(g.times(handles_[x], handles_[y]), p, "*", x, y);
      products_[std::size_t(x) * base_ + y] = p;
      // p += x, two-digit addition through the sum table
      const Split low = sum(p.low, x);
      const Split high = sum(p.high, low.high);
      if (high.high != 0 && y + 1 < base_) throw std::logic_error("digit product exceeds two digits");
      p = {high.low, low.low};
    }
  }
}

std::uint32_t DigitArithmetic::digit_of(const Numeral& handle) const {
  for (std::uint32_t d = 0; d < base_; ++d)
    if (handles_[d] == handle) return d;
  throw DomainError(handle.str() + " is not a digit below " + params_.base.str());
}

DigitString DigitArithmetic::zero() const { return make(Digits(params_.width, 0)); }

DigitString DigitArithmetic::one() const {
  Digits d(params_.width, 0);
  d.back() = 1;
  return make(std::move(d));
}

DigitString DigitArithmetic::top() const {
  return make(Digits(params_.width, base_ - 1));
}

void DigitArithmetic::require_params(const DigitString& s) const {
  if (s.base() != base_ || s.width() != params_.width)
    throw std::invalid_argument("digit string with base " + std::to_string(s.base()) + ", width " +
                                std::to_string(s.width()) + " used with base " + params_.base.str() + ", width " +
                                std::to_string(params_.width));
}

bool DigitArithmetic::less(const DigitString& s, const DigitString& t) const {
  require_params(s);
  require_params(t);
  return std::lexicographical_compare(s.digits().begin(), s.digits().end(), t.digits().begin(), t.digits().end());
}

std::optional<DigitString> DigitArithmetic::succ(const DigitString& s) const {
  require_params(s);
  Digits d = s.digits();
  std::uint32_t carry = 1;
  for (std::size_t i = d.size(); i-- > 0 && carry;) {
    const Split a = sum(d[i], carry);
    d[i] = a.low;
    carry = a.high;
  }
  if (carry) return std::nullopt;
  return make(std::move(d));
}

std::optional<DigitString> DigitArithmetic::plus(const DigitString& s, const DigitString& t) const {
  require_params(s);
  require_params(t);
  Digits d(params_.width);
  std::uint32_t carry = 0;
  for (std::size_t i = d.size(); i-- > 0;) {
    const Split a = sum(s.digits()[i], t.digits()[i]);
    const Split c = sum(a.low, carry);
    d[i] = c.low;
    carry = a.high + c.high;
  }
  if (carry) return std::nullopt;
  return make(std::move(d));
}

bool DigitArithmetic::add_at(Digits& acc, std::size_t col, std::uint32_t d) const {
  while (d != 0) {
    if (col >= acc.size()) return false;
    const Split a = sum(acc[col], d);
    acc[col] = a.low;
    d = a.high;
    ++col;
  }
  return true;
}

std::optional<DigitString> DigitArithmetic::times(const DigitString& s, const DigitString& t) const {
  require_params(s);
  require_params(t);
  const std::size_t k = params_.width;
  Digits acc(k, 0);  // least significant first
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint32_t ti = t.digits()[k - 1 - i];
    if (ti == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint32_t sj = s.digits()[k - 1 - j];
      if (sj == 0) continue;
      const Split p = product(sj, ti);
      if (!add_at(acc, i + j, p.low) || !add_at(acc, i + j + 1, p.high)) return std::nullopt;
    }
  }
  std::reverse(acc.begin(), acc.end());
  return make(std::move(acc));
}

Numeral DigitArithmetic::value(const DigitString& s) const {
  require_params(s);
  if (capacity64_) {
    std::uint64_t v = 0;
    for (auto d : s.digits()) v = v * base_ + d;
    return Numeral(v);
  }
  Numeral v = 0;
  for (auto d : s.digits()) v = v * base_ + d;
  return v;
}

DigitString DigitArithmetic::from_value(const Numeral& v) const {
  if (v < 0 || v > capacity_)
    throw std::out_of_range(v.str() + " has no " + std::to_string(params_.width) + "-digit base-" +
                            params_.base.str() + " representation");
  Digits d(params_.width);
  if (capacity64_) {
    std::uint64_t rest = v.convert_to<std::uint64_t>();
    for (std::size_t i = d.size(); i-- > 0;) {
      d[i] = std::uint32_t(rest % base_);
      rest /= base_;
    }
    return make(std::move(d));
  }
  Numeral rest = v;
  for (std::size_t i = d.size(); i-- > 0;) {
    d[i] = static_cast<std::uint32_t>(rest % base_);
    rest /= base_;
  }
  return make(std::move(d));
}

}  // namespace fa
