#include "fa/tower.hpp"

#include "fa/eval.hpp"

namespace fa {

void Tower::grow(std::size_t width) {
  const FAModel& top = stages_.back().model;
  InterpretedModel lift = build_plus_model(top, width);
  InitialEmbedding e = embed_initial(top, lift);
  FAModel next = lift.model();
  stages_.push_back({std::move(next), std::move(lift), std::move(e)});
}

std::vector<Numeral> Tower::heights() const {
  std::vector<Numeral> out;
  for (const auto& s : stages_) out.push_back(s.model.largest());
  return out;
}

Numeral Tower::lift_element(const Numeral& x, std::size_t from, std::size_t to) const {
  if (to < from || to >= stages_.size()) throw std::out_of_range("stage index");
  stages_.at(from).model.structure().require_member(x);
  Numeral v = x;
  for (std::size_t i = from + 1; i <= to; ++i) {
    const Stage& s = stages_[i];
    v = s.lift->handle((*s.embedding)(v));
  }
  return v;
}

Tower build_tower(const FAModel& m, std::size_t stages, std::size_t width) {
  Tower t(m);
  for (std::size_t i = 0; i < stages; ++i) t.grow(width);
  return t;
}

LimitValue limit_eval(const Tower& tower, LimitOp op, const Numeral& x, const Numeral& y) {
  const char* sym = op == LimitOp::Plus ? " + " : " * ";
  for (std::size_t i = 0; i < tower.size(); ++i) {
    const Numeral xi = tower.lift_element(x, 0, i);
    const Numeral yi = tower.lift_element(y, 0, i);
    const FAModel& m = tower.model(i);
    auto r = op == LimitOp::Plus ? m.plus(xi, yi) : m.times(xi, yi);
    if (!r) continue;
    std::optional<DigitString> s;
    if (i > 0) s = tower.stage(i).lift->string(*r);
    return {*r, i, std::move(s)};
  }
  throw TowerExhausted(x.str() + sym + y.str() + " is undefined at every one of " + std::to_string(tower.size()) +
                       " stages");
}

bool BoundedInductionReport::passed() const {
  for (const auto& e : entries)
    if (!e.holds) return false;
  return true;
}

BoundedInductionReport check_bounded_induction(const Tower& tower, const std::vector<Formula>& corpus) {
  for (const auto& phi : corpus) {
    if (!is_delta0(phi)) throw std::invalid_argument("not a Delta0 formula: " + to_string(phi));
    if (free_variables(phi).size() > 1)
      throw std::invalid_argument("more than one free variable: " + to_string(phi));
  }
  BoundedInductionReport report;
  for (const auto& phi : corpus) {
    const std::string text = to_string(phi);
    auto free = free_variables(phi);
    if (!free.empty()) {
      const std::string& v = *free.begin();
      const Formula instance = induction_instance(phi, v);
      for (std::size_t i = 0; i < tower.size(); ++i) {
        const bool holds = eval_formula(tower.model(i).structure(), instance);
        report.entries.push_back({i, text, "induction", holds, "induction on " + v});
      }
      continue;
    }
    if (mentions_top(phi)) {
      report.entries.push_back({0, text, "absoluteness", true, "skipped: N names a different element at each stage"});
      continue;
    }
    for (std::size_t i = 0; i + 1 < tower.size(); ++i) {
      const CheckedTruth here = eval_formula_checked(tower.model(i).structure(), phi);
      if (!here.total) {
        report.entries.push_back({i, text, "absoluteness", true, "skipped: a term is undefined at this stage"});
        continue;
      }
      const bool there = eval_formula(tower.model(i + 1).structure(), phi);
      report.entries.push_back({i, text, "absoluteness", here.value == there,
                                std::string("stage ") + std::to_string(i) + ": " + (here.value ? "true" : "false") +
                                    ", stage " + std::to_string(i + 1) + ": " + (there ? "true" : "false")});
    }
  }
  return report;
}

}  // namespace fa
