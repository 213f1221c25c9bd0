#include "fa/interp.hpp"

#include <algorithm>

#include "fa/axioms.hpp"
#include "fa/eval.hpp"

namespace fa {

namespace {

std::string inadmissible_message(const InterpParams& p, const Numeral& largest, std::optional<std::size_t> minimal) {
  std::string msg = "inadmissible parameters b=" + p.base.str() + ", k=" + std::to_string(p.width);
  if (p.base < 2) return msg + ": base below 2, no width is admissible";
  msg += ": b^k-1 = " + capacity(p).str() + " < " + Numeral(largest * largest).str() + " = N^2";
  if (minimal) msg += "; minimal admissible k is " + std::to_string(*minimal);
  return msg;
}

// M+ presented through valuations: handle v is the string of value v.
class ValuedModel final : public Structure {
 public:
  ValuedModel(std::shared_ptr<const DigitArithmetic> a, std::string name)
      : a_(std::move(a)),
        zero_(a_->value(a_->zero())),
        one_(a_->value(a_->one())),
        top_(capacity(a_->params())),
        size_(to_size(top_ + 1)),
        name_(std::move(name)) {}

  std::size_t size() const override { return size_; }
  Numeral element(std::size_t index) const override {
    if (index >= size_) throw std::out_of_range("element index");
    return Numeral(index);
  }
  bool contains(const Numeral& x) const override { return x >= 0 && x <= top_; }
  std::size_t rank(const Numeral& x) const override {
    require_member(x);
    return x.convert_to<std::size_t>();
  }
  bool less(const Numeral& x, const Numeral& y) const override { return a_->less(decode(x), decode(y)); }
  std::optional<Numeral> plus(const Numeral& x, const Numeral& y) const override {
    return encode(a_->plus(decode(x), decode(y)));
  }
  std::optional<Numeral> times(const Numeral& x, const Numeral& y) const override {
    return encode(a_->times(decode(x), decode(y)));
  }
  std::optional<Numeral> zero() const override { return zero_; }
  std::optional<Numeral> one() const override { return one_; }
  std::optional<Numeral> top() const override { return top_; }
  std::string describe() const override { return name_; }

 private:
  DigitString decode(const Numeral& x) const {
    require_member(x);
    return a_->from_value(x);
  }
  std::optional<Numeral> encode(const std::optional<DigitString>& s) const {
    if (!s) return std::nullopt;
    return a_->value(*s);
  }

  std::shared_ptr<const DigitArithmetic> a_;
  Numeral zero_, one_;
  Numeral top_;
  std::size_t size_;
  std::string name_;
};

}  // namespace

InadmissibleParams::InadmissibleParams(const InterpParams& p, const Numeral& largest,
                                       std::optional<std::size_t> minimal)
    : std::invalid_argument(inadmissible_message(p, largest, minimal)), minimal_(minimal) {}

InterpretedModel::InterpretedModel(FAModel ground, std::shared_ptr<const DigitArithmetic> arithmetic)
    : ground_(std::move(ground)),
      arithmetic_(std::move(arithmetic)),
      model_(std::make_shared<ValuedModel>(arithmetic_, ground_.structure().describe() + "+")) {}

InterpretedModel build_plus_model(const FAModel& m, std::size_t width) {
  return build_plus_model(m, InterpParams{largest_square_base(m), width});
}

InterpretedModel build_plus_model(const FAModel& m, const InterpParams& params) {
  if (!admissible(params, m.largest()))
    throw InadmissibleParams(params, m.largest(), minimal_width(params.base, m.largest()));
  auto arithmetic = std::make_shared<const DigitArithmetic>(m.shared(), params);
  return InterpretedModel(m, std::move(arithmetic));
}

InitialEmbedding::InitialEmbedding(FAModel ground, std::vector<DigitString> images)
    : ground_(std::move(ground)), images_(std::move(images)) {
  if (images_.size() != ground_.size())
    throw std::invalid_argument("embedding needs one image per ground element");
}

const DigitString& InitialEmbedding::operator()(const Numeral& x) const {
  const Structure& g = ground_.structure();
  g.require_member(x);
  std::size_t lo = 0, hi = g.size();
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (g.element(mid) <= x) lo = mid;
    else hi = mid;
  }
  return images_[lo];
}

InitialEmbedding embed_initial(const FAModel& m, const InterpretedModel& plus) {
  if (m.shared() != plus.ground().shared() && m.structure().describe() != plus.ground().structure().describe())
    throw std::invalid_argument("M+ was not built over " + m.structure().describe());
  const DigitArithmetic& a = plus.arithmetic();
  std::vector<DigitString> images;
  images.reserve(m.size());
  images.push_back(a.zero());
  for (std::size_t i = 1; i < m.size(); ++i) {
    auto next = a.succ(images.back());
    if (!next) throw std::logic_error("ground model does not fit below the top of M+");
    images.push_back(std::move(*next));
  }
  return InitialEmbedding(m, std::move(images));
}

DigitString expected_image(const InterpParams& p, const Numeral& x) {
  const Numeral& b = p.base;
  const Numeral b2 = b * b;
  if (x < 0 || x >= 2 * b2 || p.width < 3) throw std::out_of_range("no bn+k form for " + x.str());
  Digits d(p.width, 0);
  const Numeral r = x < b2 ? x : Numeral(x - b2);
  if (x >= b2) d[p.width - 3] = 1;
  d[p.width - 2] = static_cast<std::uint32_t>(r / b);
  d[p.width - 1] = static_cast<std::uint32_t>(r % b);
  return DigitString(p, std::move(d));
}

namespace {

CheckMode merge(CheckMode a, CheckMode b) {
  return a == CheckMode::Sampled || b == CheckMode::Sampled ? CheckMode::Sampled : CheckMode::Exhaustive;
}

std::string show(const std::optional<DigitString>& s) { return s ? s->str() : "undefined"; }

}  // namespace

BiinterpReport verify_biinterpretation(const FAModel& m, const InterpretedModel& plus, const InitialEmbedding& e,
                                       const SamplingPolicy& policy) {
  BiinterpReport report;
  const Structure& g = m.structure();
  const DigitArithmetic& a = plus.arithmetic();
  const auto& images = e.images();
  const std::size_t n = g.size();

  // (i) isomorphic, downward closed copy.
  CheckGroup& sub = report.substructure;
  if (images.size() != n) {
    sub.fail("embedding has " + std::to_string(images.size()) + " images for " + std::to_string(n) + " elements");
    return report;
  }
  ++sub.checked;
  if (!(images[0] == a.zero())) sub.fail("e(0) = " + images[0].str() + " is not the least string");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    ++sub.checked;
    auto next = a.succ(images[i]);
    if (!next || !(*next == images[i + 1]))
      sub.fail("image gap: e(" + g.element(i + 1).str() + ") = " + images[i + 1].str() + " but succ(e(" +
               g.element(i).str() + ")) = " + show(next));
  }
  const DigitString& image_top = images[n - 1];
  auto in_image = [&](const std::optional<DigitString>& s) { return s && !a.less(image_top, *s); };
  auto elem = [&](std::size_t i) { return g.element(i); };
  report.mode = for_each_pair(n, policy, [&](std::uint64_t i, std::uint64_t j) {
    const Numeral x = elem(i), y = elem(j);
    const DigitString &ex = images[i], &ey = images[j];
    sub.checked += 3;
    if (g.less(x, y) != a.less(ex, ey))
      sub.fail("order not preserved: " + x.str() + " < " + y.str() + " is " + (g.less(x, y) ? "true" : "false") +
               " but e(" + x.str() + ") = " + ex.str() + ", e(" + y.str() + ") = " + ey.str());
    for (int op = 0; op < 2; ++op) {
      auto down = op == 0 ? g.plus(x, y) : g.times(x, y);
      auto up = op == 0 ? a.plus(ex, ey) : a.times(ex, ey);
      const char* sym = op == 0 ? " + " : " * ";
      if (down ? !(up && *up == e(*down)) : in_image(up))
        sub.fail(x.str() + sym + y.str() + " = " + (down ? down->str() : "undefined") + " below, " + ex.str() + sym +
                 ey.str() + " = " + show(up) + " above");
    }
  });

  // (ii) every string is its digit expansion over the copy of b, in M+.
  CheckGroup& rep = report.representation;
  const DigitString eb = e(plus.params().base);
  const std::uint64_t upper = std::uint64_t(plus.model().size());
  report.mode = merge(report.mode, for_each_index(upper, policy, [&](std::uint64_t idx) {
    ++rep.checked;
    const DigitString s = a.from_value(Numeral(idx));
    std::optional<DigitString> acc = e(a.digit_handle(s.digits()[0]));
    for (std::size_t j = 1; j < s.width() && acc; ++j) {
      acc = a.times(*acc, eb);
      if (acc) acc = a.plus(*acc, e(a.digit_handle(s.digits()[j])));
    }
    if (!acc || !(*acc == s)) rep.fail(s.str() + " expands to " + show(acc));
  }));

  // (iii) ground element -> digits -> Horner in the ground model.
  CheckGroup& trip = report.round_trip;
  const Numeral& b = plus.params().base;
  report.mode = merge(report.mode, for_each_index(n, policy, [&](std::uint64_t i) {
    ++trip.checked;
    const Numeral x = elem(i);
    const DigitString& s = images[i];
    std::optional<Numeral> acc = a.digit_handle(s.digits()[0]);
    for (std::size_t j = 1; j < s.width() && acc; ++j) {
      acc = g.times(*acc, b);
      if (acc) acc = g.plus(*acc, a.digit_handle(s.digits()[j]));
    }
    if (acc != x) trip.fail(x.str() + " -> " + s.str() + " -> " + (acc ? acc->str() : "undefined"));
  }));
  return report;
}

BiinterpReport verify_biinterpretation(const FAModel& m, const InterpretedModel& plus, const SamplingPolicy& policy) {
  return verify_biinterpretation(m, plus, embed_initial(m, plus), policy);
}

LiftReport verify_lift(const FAModel& m, const InterpretedModel& plus, const InitialEmbedding& e,
                       const SamplingPolicy& policy) {
  LiftReport report;
  const Structure& up = plus.model().structure();
  const DigitArithmetic& a = plus.arithmetic();
  const Numeral top = capacity(plus.params());
  auto cut = [&](const Numeral& v) { return v <= top ? std::optional<Numeral>(v) : std::nullopt; };

  CheckGroup& val = report.valuation;
  report.valuation_mode = for_each_pair(up.size(), policy, [&](std::uint64_t i, std::uint64_t j) {
    const Numeral x(i), y(j);
    val.checked += 3;
    if (up.less(x, y) != (x < y)) val.fail("order differs at " + x.str() + ", " + y.str());
    if (up.plus(x, y) != cut(x + y))
      val.fail(a.from_value(x).str() + " + " + a.from_value(y).str() + " disagrees with " + x.str() + " + " + y.str());
    if (up.times(x, y) != cut(x * y))
      val.fail(a.from_value(x).str() + " * " + a.from_value(y).str() + " disagrees with " + x.str() + " * " + y.str());
  });

  const DigitString en = e(m.largest());
  ++report.square.checked;
  if (auto sq = a.times(en, en); !sq)
    report.square.fail("e(N) * e(N) = " + en.str() + " * " + en.str() + " is undefined");

  CheckGroup& tot = report.totality;
  const auto& images = e.images();
  report.totality_mode = for_each_pair(images.size(), policy, [&](std::uint64_t i, std::uint64_t j) {
    tot.checked += 2;
    if (!a.plus(images[i], images[j])) tot.fail(images[i].str() + " + " + images[j].str() + " is undefined");
    if (!a.times(images[i], images[j])) tot.fail(images[i].str() + " * " + images[j].str() + " is undefined");
  });
  return report;
}

std::optional<DigitString> verify_induction_lex(const InterpretedModel& plus, const Formula& phi) {
  if (!is_first_order(phi)) throw std::invalid_argument("formula is modal: " + to_string(phi));
  const std::string v = designated_variable(phi);
  const DigitArithmetic& a = plus.arithmetic();
  const Structure& s = plus.model().structure();
  const std::size_t k = plus.params().width;
  const std::uint32_t b = a.base();

  auto fails = [&](const Digits& digits) {
    Assignment asg;
    asg.set(v, a.value(DigitString(plus.params(), digits)));
    return !eval_formula(s, phi, asg);
  };
  // Is there a failing string extending digits[0..fixed]?
  auto failing_completion = [&](Digits digits, std::size_t fixed) {
    std::fill(digits.begin() + std::ptrdiff_t(fixed), digits.end(), 0);
    while (true) {
      if (fails(digits)) return true;
      std::size_t i = k;
      while (i > fixed && ++digits[i - 1] == b) digits[--i] = 0;
      if (i == fixed) return false;
    }
  };

  Digits digits(k, 0);
  for (std::size_t pos = 0; pos < k; ++pos) {
    bool found = false;
    for (std::uint32_t d = 0; d < b && !found; ++d) {
      digits[pos] = d;
      found = failing_completion(digits, pos + 1);
    }
    if (!found) {
      if (pos == 0) return std::nullopt;
      throw std::logic_error("digitwise minimization lost its counterexample");
    }
  }
  return DigitString(plus.params(), std::move(digits));
}

void InstrumentedStructure::note(const Numeral& a, const Numeral& b) const {
  ++requests_;
  const Numeral& big = a < b ? b : a;
  if (!largest_operand_ || *largest_operand_ < big) largest_operand_ = big;
}

std::optional<Numeral> InstrumentedStructure::plus(const Numeral& a, const Numeral& b) const {
  note(a, b);
  return inner_->plus(a, b);
}

std::optional<Numeral> InstrumentedStructure::times(const Numeral& a, const Numeral& b) const {
  note(a, b);
  return inner_->times(a, b);
}

}  // namespace fa
