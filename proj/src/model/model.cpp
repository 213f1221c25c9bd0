#include "fa/model.hpp"

#include <algorithm>

namespace fa {

std::optional<Numeral> Structure::succ(const Numeral& a) const {
  require_member(a);
  auto unit = one();
  if (!unit) return std::nullopt;
  return plus(a, *unit);
}

std::size_t Structure::rank(const Numeral& x) const {
  require_member(x);
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (element(mid) < x) lo = mid + 1;
    else hi = mid;
  }
  return lo;
}

void Structure::require_member(const Numeral& x) const {
  if (!contains(x)) throw DomainError(x.str() + " is not an individual of " + describe());
}

namespace {

std::vector<Triple> graph(const Structure& s, bool multiplicative) {
  std::vector<Triple> out;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Numeral a = s.element(i);
    for (std::size_t j = 0; j < n; ++j) {
      const Numeral b = s.element(j);
      auto c = multiplicative ? s.times(a, b) : s.plus(a, b);
      if (c) out.push_back({a, b, *c});
    }
  }
  return out;
}

class Truncation final : public Structure {
 public:
  explicit Truncation(Numeral n) : n_(std::move(n)), size_(to_size(n_ + 1)) {}

  std::size_t size() const override { return size_; }
  Numeral element(std::size_t index) const override {
    if (index >= size_) throw std::out_of_range("element index");
    return Numeral(index);
  }
  bool contains(const Numeral& x) const override { return x >= 0 && x <= n_; }
  std::size_t rank(const Numeral& x) const override {
    require_member(x);
    return x.convert_to<std::size_t>();
  }
  bool less(const Numeral& a, const Numeral& b) const override {
    require_member(a);
    require_member(b);
    return a < b;
  }
  std::optional<Numeral> plus(const Numeral& a, const Numeral& b) const override {
    require_member(a);
    require_member(b);
    Numeral c = a + b;
    if (c > n_) return std::nullopt;
    return c;
  }
  std::optional<Numeral> times(const Numeral& a, const Numeral& b) const override {
    require_member(a);
    require_member(b);
    Numeral c = a * b;
    if (c > n_) return std::nullopt;
    return c;
  }
  std::optional<Numeral> zero() const override { return Numeral(0); }
  std::optional<Numeral> one() const override { return Numeral(1); }
  std::optional<Numeral> top() const override { return n_; }
  std::string describe() const override { return "N|" + n_.str(); }

 private:
  Numeral n_;
  std::size_t size_;
};

class SubsetWorld final : public Structure {
 public:
  explicit SubsetWorld(std::vector<Numeral> xs) : xs_(std::move(xs)) {
    for (const auto& x : xs_)
      if (x < 0) throw std::invalid_argument("negative individual");
    std::sort(xs_.begin(), xs_.end());
    xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());
  }

  std::size_t size() const override { return xs_.size(); }
  Numeral element(std::size_t index) const override { return xs_.at(index); }
  bool contains(const Numeral& x) const override {
    return std::binary_search(xs_.begin(), xs_.end(), x);
  }
  bool less(const Numeral& a, const Numeral& b) const override {
    require_member(a);
    require_member(b);
    return a < b;
  }
  std::optional<Numeral> plus(const Numeral& a, const Numeral& b) const override {
    require_member(a);
    require_member(b);
    return induced(a + b);
  }
  std::optional<Numeral> times(const Numeral& a, const Numeral& b) const override {
    require_member(a);
    require_member(b);
    return induced(a * b);
  }
  std::optional<Numeral> zero() const override { return induced(0); }
  std::optional<Numeral> one() const override { return induced(1); }
  std::string describe() const override {
    std::string out = "{";
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      if (i) out += ",";
      out += xs_[i].str();
    }
    return out + "}";
  }

 private:
  std::optional<Numeral> induced(const Numeral& c) const {
    if (contains(c)) return c;
    return std::nullopt;
  }

  std::vector<Numeral> xs_;
};

// Forwards everything to the wrapped structure but reports an explicit N.
class Presented final : public Structure {
 public:
  Presented(StructurePtr base, Numeral largest) : base_(std::move(base)), largest_(std::move(largest)) {}

  std::size_t size() const override { return base_->size(); }
  Numeral element(std::size_t index) const override { return base_->element(index); }
  bool contains(const Numeral& x) const override { return base_->contains(x); }
  std::size_t rank(const Numeral& x) const override { return base_->rank(x); }
  bool less(const Numeral& a, const Numeral& b) const override { return base_->less(a, b); }
  std::optional<Numeral> plus(const Numeral& a, const Numeral& b) const override { return base_->plus(a, b); }
  std::optional<Numeral> times(const Numeral& a, const Numeral& b) const override { return base_->times(a, b); }
  std::optional<Numeral> zero() const override { return base_->zero(); }
  std::optional<Numeral> one() const override { return base_->one(); }
  std::optional<Numeral> top() const override { return largest_; }
  std::string describe() const override { return base_->describe() + " with N=" + largest_.str(); }

 private:
  StructurePtr base_;
  Numeral largest_;
};

}  // namespace

std::vector<Triple> plus_graph(const Structure& s) { return graph(s, false); }
std::vector<Triple> times_graph(const Structure& s) { return graph(s, true); }

FAModel::FAModel(StructurePtr structure, Numeral largest)
    : structure_(std::move(structure)), largest_(std::move(largest)) {}

FAModel::FAModel(StructurePtr structure) : structure_(std::move(structure)) {
  if (!structure_) throw std::invalid_argument("null structure");
  auto n = structure_->top();
  if (!n) throw std::invalid_argument(structure_->describe() + " has no largest-number constant");
  structure_->require_member(*n);
  largest_ = *n;
}

FAModel FAModel::presented(StructurePtr structure, Numeral largest) {
  if (!structure) throw std::invalid_argument("null structure");
  structure->require_member(largest);
  auto wrapped = std::make_shared<Presented>(structure, largest);
  return FAModel(std::move(wrapped), std::move(largest));
}

FAModel make_truncation(const Numeral& n) {
  if (n < 1) throw std::invalid_argument("truncation height must be at least 1 (the constant 1 must denote)");
  return FAModel(std::make_shared<Truncation>(n));
}

StructurePtr make_subset_world(std::vector<Numeral> individuals) {
  return std::make_shared<SubsetWorld>(std::move(individuals));
}

Numeral largest_square_base(const FAModel& m) {
  // Squares are monotone in the order, so binary search over positions for
  // the last element whose square is defined.
  const Structure& s = m.structure();
  std::size_t lo = 0, hi = s.size();  // invariant: square defined at lo, undefined at hi (or hi == size)
  if (!s.times(s.element(0), s.element(0))) throw std::invalid_argument("0*0 undefined");
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const Numeral x = s.element(mid);
    if (s.times(x, x))
      lo = mid;
    else
      hi = mid;
  }
  return s.element(lo);
}

}  // namespace fa
