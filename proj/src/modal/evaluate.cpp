#include <set>

#include "fa/modal.hpp"

namespace fa {

const std::vector<std::string>& ModalEvaluator::free_of(const Formula& f) {
  auto it = free_.find(f.id());
  if (it != free_.end()) return it->second;
  const auto vars = free_variables(f);
  return free_.emplace(f.id(), std::vector<std::string>(vars.begin(), vars.end())).first->second;
}

void ModalEvaluator::prepare(std::size_t world, const Formula& f, const Assignment& a) {
  if (world >= sys_.size())
    throw std::out_of_range("world index " + std::to_string(world) + " out of range for " + sys_.name());
  if (!free_.count(f.id())) pinned_.push_back(f);
  for (const auto& v : free_of(f))
    if (!a.find(v)) throw UnassignedVariable(v);
  for (const auto& [name, value] : a.values()) sys_.world(world).require_member(value);
}

bool ModalEvaluator::holds_at(std::size_t world, const Formula& f, const Assignment& a) {
  prepare(world, f, a);
  Env env(a);
  return holds(at(world), f, env);
}

std::vector<std::string> ModalEvaluator::explain_at(std::size_t world, const Formula& f, const Assignment& a) {
  prepare(world, f, a);
  Env env(a);
  return explain(at(world), f, env);
}

boost::dynamic_bitset<> ModalEvaluator::truth_set(const Formula& f) {
  boost::dynamic_bitset<> out(sys_.size());
  for (std::size_t w = 0; w < sys_.size(); ++w)
    if (holds_at(w, f)) out.set(w);
  return out;
}

bool ModalEvaluator::holds_modal(const World& w, const Formula& f, Env& env) {
  Key key{f.id(), w.index, {}};
  for (const auto& v : free_of(f)) key.values.push_back(env.get(v));
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  const bool dia = f.kind() == Formula::Kind::Possibly;
  bool result = !dia;
  const auto& succ = sys_.successors(w.index);
  for (auto v = succ.find_first(); v != succ.npos; v = succ.find_next(v)) {
    if (holds(at(v), f.body(), env) == dia) {
      result = dia;
      break;
    }
  }
  memo_.emplace(std::move(key), result);
  return result;
}

void ModalEvaluator::explain_modal(const World& w, const Formula& f, Env& env, bool truth,
                                   std::vector<std::string>& out, int indent) {
  const std::string pad(2 * indent, ' ');
  const bool dia = f.kind() == Formula::Kind::Possibly;
  const auto& succ = sys_.successors(w.index);
  // dia true and box false are decided by a single world.
  if (truth == dia) {
    for (auto v = succ.find_first(); v != succ.npos; v = succ.find_next(v)) {
      if (holds(at(v), f.body(), env) != dia) continue;
      out.push_back(pad + (dia ? "dia: witness world " : "box: fails at world ") + sys_.label(v));
      explain_into(at(v), f.body(), env, out, indent + 1);
      return;
    }
  }
  const std::string k = std::to_string(succ.count());
  out.push_back(pad + (dia ? "dia: body fails at all " + k : "box: body holds at all " + k) + " accessible worlds");
}

bool eval_modal(const PotentialistSystem& sys, std::size_t world, const Formula& f, const Assignment& a) {
  ModalEvaluator e(sys);
  return e.holds_at(world, f, a);
}

std::vector<std::string> explain_modal(const PotentialistSystem& sys, std::size_t world, const Formula& f,
                                       const Assignment& a) {
  ModalEvaluator e(sys);
  return e.explain_at(world, f, a);
}

Formula potentialist_translation(const Formula& psi) {
  using K = Formula::Kind;
  switch (psi.kind()) {
    case K::Not: return Formula::negation(potentialist_translation(psi.lhs()));
    case K::And: return Formula::conjunction(potentialist_translation(psi.lhs()), potentialist_translation(psi.rhs()));
    case K::Or: return Formula::disjunction(potentialist_translation(psi.lhs()), potentialist_translation(psi.rhs()));
    case K::Implies:
      return Formula::implication(potentialist_translation(psi.lhs()), potentialist_translation(psi.rhs()));
    case K::Exists: {
      Formula q = Formula::exists(psi.var(), psi.bound(), potentialist_translation(psi.body()));
      return psi.bound() ? q : Formula::possibly(q);
    }
    case K::Forall: {
      Formula q = Formula::forall(psi.var(), psi.bound(), potentialist_translation(psi.body()));
      return psi.bound() ? q : Formula::necessarily(q);
    }
    case K::Possibly:
    case K::Necessarily:
      throw std::invalid_argument("potentialist translation of a modal formula: " + to_string(psi));
    default:
      return psi;
  }
}

namespace {

void collect_names(const Term& t, std::set<std::string>& out) {
  if (t.kind() == Term::Kind::Var) out.insert(t.name());
  else if (t.kind() == Term::Kind::Succ) collect_names(t.lhs(), out);
  else if (t.is_compound()) {
    collect_names(t.lhs(), out);
    collect_names(t.rhs(), out);
  }
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  if (f.is_atom()) {
    for (const auto& t : f.terms()) collect_names(t, out);
    return;
  }
  if (f.is_quantifier()) {
    out.insert(f.var());
    if (f.bound()) collect_names(*f.bound(), out);
  }
  collect_names(f.lhs(), out);
  if (f.kind() == Formula::Kind::And || f.kind() == Formula::Kind::Or || f.kind() == Formula::Kind::Implies)
    collect_names(f.rhs(), out);
}

class Flattener {
 public:
  explicit Flattener(const Formula& f) { collect_names(f, taken_); }

  Formula run(const Formula& f) {
    using K = Formula::Kind;
    if (f.is_atom()) return atom(f);
    switch (f.kind()) {
      case K::Not: return Formula::negation(run(f.lhs()));
      case K::And: return Formula::conjunction(run(f.lhs()), run(f.rhs()));
      case K::Or: return Formula::disjunction(run(f.lhs()), run(f.rhs()));
      case K::Implies: return Formula::implication(run(f.lhs()), run(f.rhs()));
      case K::Exists:
      case K::Forall: return quantifier(f);
      default: throw std::invalid_argument("relational form of a modal formula: " + to_string(f));
    }
  }

 private:
  struct Defs {
    std::vector<std::string> vars;
    std::vector<Formula> atoms;
    // repeated subterms of one atom share a name
    std::map<std::string, Term> named;
  };

  std::string fresh() {
    std::string name;
    do name = "z_" + std::to_string(++counter_);
    while (taken_.count(name));
    taken_.insert(name);
    return name;
  }

  // Name for the value of t, with the atoms that pin it down.
  Term name(const Term& t, Defs& d) {
    if (t.kind() == Term::Kind::Var) return t;
    const std::string key = to_string(t);
    if (auto it = d.named.find(key); it != d.named.end()) return it->second;
    const Term z = Term::var(fresh());
    d.vars.push_back(z.name());
    switch (t.kind()) {
      case Term::Kind::Zero:
      case Term::Kind::One:
      case Term::Kind::Top: d.atoms.push_back(Formula::eq(z, t)); break;
      case Term::Kind::Sum: {
        Term a = name(t.lhs(), d), b = name(t.rhs(), d);
        d.atoms.push_back(Formula::plus_atom(a, b, z));
        break;
      }
      case Term::Kind::Prod: {
        Term a = name(t.lhs(), d), b = name(t.rhs(), d);
        d.atoms.push_back(Formula::times_atom(a, b, z));
        break;
      }
      case Term::Kind::Succ: {
        Term a = name(t.lhs(), d);
        Term u = name(Term::one(), d);
        d.atoms.push_back(Formula::plus_atom(a, u, z));
        break;
      }
      default: break;
    }
    d.named.emplace(key, z);
    return z;
  }

  static Formula conjoin(const std::vector<Formula>& fs, Formula last) {
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) last = Formula::conjunction(*it, last);
    return last;
  }

  static Formula close(Formula f, const std::vector<std::string>& vars, bool universal) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      f = universal ? Formula::forall(*it, std::nullopt, f) : Formula::exists(*it, std::nullopt, f);
    return f;
  }

  Formula atom(const Formula& f) {
    Defs d;
    std::vector<Term> args;
    for (const auto& t : f.terms()) args.push_back(name(t, d));
    if (d.vars.empty()) return f;
    Formula core = f;
    switch (f.kind()) {
      case Formula::Kind::Eq: core = Formula::eq(args[0], args[1]); break;
      case Formula::Kind::Lt: core = Formula::lt(args[0], args[1]); break;
      case Formula::Kind::Defined: core = Formula::defined(args[0]); break;
      case Formula::Kind::PlusAtom: core = Formula::plus_atom(args[0], args[1], args[2]); break;
      case Formula::Kind::TimesAtom: core = Formula::times_atom(args[0], args[1], args[2]); break;
      default: break;
    }
    return close(conjoin(d.atoms, core), d.vars, false);
  }

  Formula quantifier(const Formula& f) {
    const bool universal = f.kind() == Formula::Kind::Forall;
    Formula body = run(f.body());
    if (!f.bound()) return universal ? Formula::forall(f.var(), std::nullopt, body) : Formula::exists(f.var(), std::nullopt, body);
    Defs d;
    const Term z = name(*f.bound(), d);
    const Formula guard = Formula::lt(Term::var(f.var()), z);
    Formula inner = universal ? Formula::forall(f.var(), std::nullopt, Formula::implication(guard, body))
                              : Formula::exists(f.var(), std::nullopt, Formula::conjunction(guard, body));
    if (d.vars.empty()) return inner;
    if (universal) {
      Formula defs = d.atoms.back();
      for (auto it = d.atoms.rbegin() + 1; it != d.atoms.rend(); ++it) defs = Formula::conjunction(*it, defs);
      return close(Formula::implication(defs, inner), d.vars, true);
    }
    return close(conjoin(d.atoms, inner), d.vars, false);
  }

  std::set<std::string> taken_;
  std::size_t counter_ = 0;
};

bool relational_term(const Term& t) {
  return t.kind() == Term::Kind::Var;
}

}  // namespace

Formula relational_form(const Formula& psi) { return Flattener(psi).run(psi); }

bool is_relational(const Formula& psi) {
  using K = Formula::Kind;
  if (psi.is_atom()) {
    const auto& ts = psi.terms();
    if (psi.kind() == K::Eq)
      return relational_term(ts[0]) && (relational_term(ts[1]) || !ts[1].is_compound());
    for (const auto& t : ts)
      if (!relational_term(t)) return false;
    return true;
  }
  switch (psi.kind()) {
    case K::Not: return is_relational(psi.lhs());
    case K::And:
    case K::Or:
    case K::Implies: return is_relational(psi.lhs()) && is_relational(psi.rhs());
    case K::Exists:
    case K::Forall: return !psi.bound() && is_relational(psi.body());
    default: return false;
  }
}

bool TranslationReport::passed() const {
  for (const auto& r : rows)
    if (r.excluded.empty() && !r.violations.empty()) return false;
  return true;
}

TranslationReport check_translation_theorem(const PotentialistSystem& sys, const std::vector<Formula>& corpus,
                                            bool relational) {
  if (!sys.limit()) throw PreconditionError(sys.name() + " has no limit structure");
  if (auto problems = convergence_problems(sys); !problems.empty())
    throw PreconditionError(sys.name() + " does not converge to its limit: " + problems.front());

  TranslationReport report;
  report.relational = relational;
  ModalEvaluator e(sys);
  for (const auto& psi : corpus) {
    TranslationRow row;
    row.formula = to_string(psi);
    if (!is_first_order(psi)) row.excluded = "modal";
    else if (!free_variables(psi).empty()) row.excluded = "not closed";
    else if (mentions_top(psi)) row.excluded = "mentions N, which is not rigid across worlds";
    if (!row.excluded.empty()) {
      report.rows.push_back(std::move(row));
      continue;
    }
    const Formula translated = potentialist_translation(relational ? relational_form(psi) : psi);
    row.translated = to_string(translated);
    row.limit_value = eval_formula(*sys.limit(), psi);
    for (std::size_t w = 0; w < sys.size(); ++w) {
      const bool v = e.holds_at(w, translated);
      row.world_values.push_back(v);
      if (v != row.limit_value) row.violations.push_back(w);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace fa
