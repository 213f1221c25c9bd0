#include "fa/eval.hpp"

namespace fa {

Env::Env(const Assignment& a) {
  initial_names_.reserve(a.values().size());
  for (const auto& [name, value] : a.values()) {
    initial_names_.push_back(name);
    slots_.emplace_back(&initial_names_.back(), value);
  }
}

const Numeral* Env::find(const std::string& var) const {
  for (auto it = slots_.rbegin(); it != slots_.rend(); ++it)
    if (*it->first == var) return &it->second;
  return nullptr;
}

const Numeral& Env::get(const std::string& var) const {
  if (const Numeral* v = find(var)) return *v;
  throw UnassignedVariable(var);
}

Assignment Env::snapshot() const {
  Assignment a;
  for (const auto& [name, value] : slots_) a.set(*name, value);  // later bindings shadow earlier ones
  return a;
}

std::optional<Numeral> Evaluator::value(const World& w, const Term& t, const Env& env) {
  const Structure& s = *w.structure;
  switch (t.kind()) {
    case Term::Kind::Var: return env.get(t.name());
    case Term::Kind::Zero: return s.zero();
    case Term::Kind::One: return s.one();
    case Term::Kind::Top: return s.top();
    case Term::Kind::Succ: {
      auto a = value(w, t.lhs(), env);
      if (!a) return std::nullopt;
      return s.succ(*a);
    }
    case Term::Kind::Sum:
    case Term::Kind::Prod: {
      auto a = value(w, t.lhs(), env);
      if (!a) return std::nullopt;
      auto b = value(w, t.rhs(), env);
      if (!b) return std::nullopt;
      return t.kind() == Term::Kind::Sum ? s.plus(*a, *b) : s.times(*a, *b);
    }
  }
  return std::nullopt;
}

std::optional<Numeral> Evaluator::argument(const World& w, const Term& t, const Env& env) {
  auto v = value(w, t, env);
  if (!v) ++undefined_terms_;
  return v;
}

bool Evaluator::holds(const World& w, const Formula& f, Env& env) {
  using K = Formula::Kind;
  const Structure& s = *w.structure;
  switch (f.kind()) {
    case K::Eq: {
      auto a = argument(w, f.terms()[0], env);
      auto b = argument(w, f.terms()[1], env);
      return a && b && *a == *b;
    }
    case K::Lt: {
      auto a = argument(w, f.terms()[0], env);
      auto b = argument(w, f.terms()[1], env);
      return a && b && s.less(*a, *b);
    }
    case K::Defined:
      return argument(w, f.terms()[0], env).has_value();
    case K::PlusAtom:
    case K::TimesAtom: {
      auto a = argument(w, f.terms()[0], env);
      auto b = argument(w, f.terms()[1], env);
      auto c = argument(w, f.terms()[2], env);
      if (!a || !b || !c) return false;
      auto r = f.kind() == K::PlusAtom ? s.plus(*a, *b) : s.times(*a, *b);
      return r && *r == *c;
    }
    case K::Not: return !holds(w, f.lhs(), env);
    case K::And: return holds(w, f.lhs(), env) && holds(w, f.rhs(), env);
    case K::Or: return holds(w, f.lhs(), env) || holds(w, f.rhs(), env);
    case K::Implies: return !holds(w, f.lhs(), env) || holds(w, f.rhs(), env);
    case K::Forall:
    case K::Exists: return quantifier(w, f, env);
    case K::Possibly:
    case K::Necessarily: return holds_modal(w, f, env);
  }
  return false;
}

bool Evaluator::quantifier(const World& w, const Formula& f, Env& env) {
  const Structure& s = *w.structure;
  const bool universal = f.kind() == Formula::Kind::Forall;
  std::optional<Numeral> bound;
  if (f.bound()) {
    bound = argument(w, *f.bound(), env);
    if (!bound) return universal;
  }
  const std::size_t n = bound ? s.rank(*bound) : s.size();
  if (n == 0) return universal;
  env.push(f.var(), Numeral(0));
  bool result = universal;
  for (std::size_t i = 0; i < n; ++i) {
    env.innermost() = s.element(i);
    if (holds(w, f.body(), env) != universal) {
      result = !universal;
      break;
    }
  }
  env.pop();
  return result;
}

bool Evaluator::holds_modal(const World&, const Formula&, Env&) { throw WrongEvaluator(); }

void Evaluator::explain_modal(const World&, const Formula&, Env&, bool, std::vector<std::string>&, int) {
  throw WrongEvaluator();
}

std::vector<std::string> Evaluator::explain(const World& w, const Formula& f, Env& env) {
  std::vector<std::string> out;
  explain_into(w, f, env, out, 0);
  return out;
}

namespace {

std::string show(const std::optional<Numeral>& v) { return v ? v->str() : "undefined"; }

}  // namespace

void Evaluator::explain_into(const World& w, const Formula& f, Env& env, std::vector<std::string>& out, int indent) {
  using K = Formula::Kind;
  const std::string pad(2 * indent, ' ');
  const bool truth = holds(w, f, env);
  const std::string verdict = truth ? "true" : "false";
  const Structure& s = *w.structure;

  if (f.is_atom()) {
    std::string line = pad + to_string(f) + " is " + verdict + ":";
    for (std::size_t i = 0; i < f.terms().size(); ++i) {
      const Term& t = f.terms()[i];
      if (t.kind() == Term::Kind::Var && i > 0 && f.terms()[i - 1] == t) continue;
      line += (i ? ", " : " ") + to_string(t) + " = " + show(value(w, t, env));
    }
    out.push_back(line);
    return;
  }
  switch (f.kind()) {
    case K::Not:
      out.push_back(pad + "not: operand is " + (truth ? "false" : "true"));
      explain_into(w, f.lhs(), env, out, indent + 1);
      return;
    case K::And:
      if (truth) {
        out.push_back(pad + "and: both conjuncts hold");
        explain_into(w, f.lhs(), env, out, indent + 1);
        explain_into(w, f.rhs(), env, out, indent + 1);
      } else {
        const bool left_fails = !holds(w, f.lhs(), env);
        out.push_back(pad + std::string("and: ") + (left_fails ? "left" : "right") + " conjunct fails");
        explain_into(w, left_fails ? f.lhs() : f.rhs(), env, out, indent + 1);
      }
      return;
    case K::Or:
      if (truth) {
        const bool left_holds = holds(w, f.lhs(), env);
        out.push_back(pad + std::string("or: ") + (left_holds ? "left" : "right") + " disjunct holds");
        explain_into(w, left_holds ? f.lhs() : f.rhs(), env, out, indent + 1);
      } else {
        out.push_back(pad + "or: both disjuncts fail");
        explain_into(w, f.lhs(), env, out, indent + 1);
        explain_into(w, f.rhs(), env, out, indent + 1);
      }
      return;
    case K::Implies:
      if (truth && !holds(w, f.lhs(), env)) {
        out.push_back(pad + "implies: antecedent fails");
        explain_into(w, f.lhs(), env, out, indent + 1);
      } else if (truth) {
        out.push_back(pad + "implies: consequent holds");
        explain_into(w, f.rhs(), env, out, indent + 1);
      } else {
        out.push_back(pad + "implies: antecedent holds, consequent fails");
        explain_into(w, f.lhs(), env, out, indent + 1);
        explain_into(w, f.rhs(), env, out, indent + 1);
      }
      return;
    case K::Forall:
    case K::Exists: {
      const bool universal = f.kind() == K::Forall;
      const std::string head = pad + (universal ? "A " : "E ") + f.var() + ": ";
      std::optional<Numeral> bound;
      if (f.bound()) {
        bound = value(w, *f.bound(), env);
        if (!bound) {
          out.push_back(head + "bound " + to_string(*f.bound()) + " is undefined, range is empty");
          return;
        }
      }
      // Search for the first individual deciding the quantifier.
      const std::size_t range = bound ? s.rank(*bound) : s.size();
      std::size_t examined = 0;
      for (std::size_t i = 0; i < range; ++i) {
        Numeral x = s.element(i);
        ++examined;
        env.push(f.var(), x);
        const bool body = holds(w, f.body(), env);
        if (body != universal) {
          out.push_back(head + (universal ? "counterexample " : "witness ") + f.var() + " = " + x.str());
          explain_into(w, f.body(), env, out, indent + 1);
          env.pop();
          return;
        }
        env.pop();
      }
      out.push_back(head + (universal ? "holds for all " : "no witness among ") + std::to_string(examined) +
                    " individuals of " + s.describe());
      return;
    }
    case K::Possibly:
    case K::Necessarily:
      explain_modal(w, f, env, truth, out, indent);
      return;
    default:
      return;
  }
}

namespace {

void check_assignment(const Structure& m, const Assignment& a) {
  for (const auto& [name, value] : a.values()) m.require_member(value);
}

void check_assigned(const std::set<std::string>& free, const Assignment& a) {
  for (const auto& v : free)
    if (!a.find(v)) throw UnassignedVariable(v);
}

}  // namespace

std::optional<Numeral> eval_term(const Structure& m, const Term& t, const Assignment& a) {
  check_assignment(m, a);
  check_assigned(free_variables(t), a);
  Env env(a);
  Evaluator e;
  return e.value(World{&m}, t, env);
}

bool eval_formula(const Structure& m, const Formula& f, const Assignment& a) {
  return eval_formula_checked(m, f, a).value;
}

CheckedTruth eval_formula_checked(const Structure& m, const Formula& f, const Assignment& a) {
  check_assignment(m, a);
  if (!is_first_order(f)) throw WrongEvaluator();
  check_assigned(free_variables(f), a);
  Env env(a);
  Evaluator e;
  const bool v = e.holds(World{&m}, f, env);
  return {v, e.undefined_terms() == 0};
}

std::vector<std::string> explain_formula(const Structure& m, const Formula& f, const Assignment& a) {
  check_assignment(m, a);
  if (!is_first_order(f)) throw WrongEvaluator();
  check_assigned(free_variables(f), a);
  Env env(a);
  Evaluator e;
  return e.explain(World{&m}, f, env);
}

}  // namespace fa
