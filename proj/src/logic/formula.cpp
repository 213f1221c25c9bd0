#include "fa/formula.hpp"

#include <algorithm>
#include <ostream>

namespace fa {

struct Term::Node {
  Kind kind;
  std::string name;
  Term lhs{nullptr};
  Term rhs{nullptr};
};

struct Formula::Node {
  Kind kind;
  std::vector<Term> terms;
  Formula lhs{nullptr};
  Formula rhs{nullptr};
  std::string var;
  std::optional<Term> bound;
};

// --- Term -------------------------------------------------------------------

Term Term::var(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name)}));
}
Term Term::zero() { return Term(std::make_shared<const Node>(Node{Kind::Zero, {}})); }
Term Term::one() { return Term(std::make_shared<const Node>(Node{Kind::One, {}})); }
Term Term::top() { return Term(std::make_shared<const Node>(Node{Kind::Top, {}})); }
Term Term::sum(Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(Node{Kind::Sum, {}, std::move(lhs), std::move(rhs)}));
}
Term Term::prod(Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(Node{Kind::Prod, {}, std::move(lhs), std::move(rhs)}));
}
Term Term::succ(Term operand) {
  return Term(std::make_shared<const Node>(Node{Kind::Succ, {}, std::move(operand)}));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::lhs() const { return node_->lhs; }
const Term& Term::rhs() const { return node_->rhs; }
bool Term::is_compound() const {
  return node_->kind == Kind::Sum || node_->kind == Kind::Prod || node_->kind == Kind::Succ;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: return a.name() == b.name();
    case Term::Kind::Zero:
    case Term::Kind::One:
    case Term::Kind::Top: return true;
    case Term::Kind::Succ: return a.lhs() == b.lhs();
    case Term::Kind::Sum:
    case Term::Kind::Prod: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

// --- Formula ----------------------------------------------------------------

namespace {

bool occurs(const Term& t, const std::string& v) {
  switch (t.kind()) {
    case Term::Kind::Var: return t.name() == v;
    case Term::Kind::Zero:
    case Term::Kind::One:
    case Term::Kind::Top: return false;
    case Term::Kind::Succ: return occurs(t.lhs(), v);
    case Term::Kind::Sum:
    case Term::Kind::Prod: return occurs(t.lhs(), v) || occurs(t.rhs(), v);
  }
  return false;
}

}  // namespace

Formula Formula::eq(Term a, Term b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Eq, {std::move(a), std::move(b)}}));
}
Formula Formula::lt(Term a, Term b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Lt, {std::move(a), std::move(b)}}));
}
Formula Formula::defined(Term t) {
  return Formula(std::make_shared<const Node>(Node{Kind::Defined, {std::move(t)}}));
}
Formula Formula::plus_atom(Term a, Term b, Term c) {
  return Formula(std::make_shared<const Node>(Node{Kind::PlusAtom, {std::move(a), std::move(b), std::move(c)}}));
}
Formula Formula::times_atom(Term a, Term b, Term c) {
  return Formula(std::make_shared<const Node>(Node{Kind::TimesAtom, {std::move(a), std::move(b), std::move(c)}}));
}
Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, std::move(f)}));
}
Formula Formula::conjunction(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, std::move(a), std::move(b)}));
}
Formula Formula::disjunction(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, std::move(a), std::move(b)}));
}
Formula Formula::implication(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Implies, {}, std::move(a), std::move(b)}));
}
Formula Formula::forall(std::string var, std::optional<Term> bound, Formula body) {
  if (bound && occurs(*bound, var))
    throw std::invalid_argument("quantified variable '" + var + "' occurs in its own bound");
  return Formula(std::make_shared<const Node>(
      Node{Kind::Forall, {}, std::move(body), Formula(nullptr), std::move(var), std::move(bound)}));
}
Formula Formula::exists(std::string var, std::optional<Term> bound, Formula body) {
  if (bound && occurs(*bound, var))
    throw std::invalid_argument("quantified variable '" + var + "' occurs in its own bound");
  return Formula(std::make_shared<const Node>(
      Node{Kind::Exists, {}, std::move(body), Formula(nullptr), std::move(var), std::move(bound)}));
}
Formula Formula::possibly(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Possibly, {}, std::move(f)}));
}
Formula Formula::necessarily(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Necessarily, {}, std::move(f)}));
}

Formula::Kind Formula::kind() const { return node_->kind; }
bool Formula::is_atom() const { return node_->kind <= Kind::TimesAtom; }
bool Formula::is_quantifier() const { return node_->kind == Kind::Forall || node_->kind == Kind::Exists; }
bool Formula::is_modal_operator() const {
  return node_->kind == Kind::Possibly || node_->kind == Kind::Necessarily;
}
const std::vector<Term>& Formula::terms() const { return node_->terms; }
const Formula& Formula::lhs() const { return node_->lhs; }
const Formula& Formula::rhs() const { return node_->rhs; }
const std::string& Formula::var() const { return node_->var; }
const std::optional<Term>& Formula::bound() const { return node_->bound; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.kind() != b.kind()) return false;
  using K = Formula::Kind;
  switch (a.kind()) {
    case K::Eq: case K::Lt: case K::Defined: case K::PlusAtom: case K::TimesAtom:
      return a.terms() == b.terms();
    case K::Not: case K::Possibly: case K::Necessarily:
      return a.lhs() == b.lhs();
    case K::And: case K::Or: case K::Implies:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case K::Forall: case K::Exists:
      return a.var() == b.var() && a.bound() == b.bound() && a.body() == b.body();
  }
  return false;
}

// --- Syntactic queries --------------------------------------------------------

namespace {

void collect(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var: out.insert(t.name()); break;
    case Term::Kind::Zero: case Term::Kind::One: case Term::Kind::Top: break;
    case Term::Kind::Succ: collect(t.lhs(), out); break;
    case Term::Kind::Sum: case Term::Kind::Prod:
      collect(t.lhs(), out);
      collect(t.rhs(), out);
      break;
  }
}

template <class Pred>
bool any_node(const Formula& f, Pred pred) {
  if (pred(f)) return true;
  if (f.is_atom()) return false;
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::And: case K::Or: case K::Implies:
      return any_node(f.lhs(), pred) || any_node(f.rhs(), pred);
    default:
      return any_node(f.lhs(), pred);
  }
}

}  // namespace

std::set<std::string> free_variables(const Term& t) {
  std::set<std::string> out;
  collect(t, out);
  return out;
}

std::set<std::string> free_variables(const Formula& f) {
  using K = Formula::Kind;
  std::set<std::string> out;
  if (f.is_atom()) {
    for (const auto& t : f.terms()) collect(t, out);
    return out;
  }
  switch (f.kind()) {
    case K::And: case K::Or: case K::Implies: {
      out = free_variables(f.lhs());
      auto r = free_variables(f.rhs());
      out.insert(r.begin(), r.end());
      return out;
    }
    case K::Forall: case K::Exists: {
      out = free_variables(f.body());
      out.erase(f.var());
      if (f.bound()) collect(*f.bound(), out);
      return out;
    }
    default:
      return free_variables(f.lhs());
  }
}

bool mentions_top(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Top: return true;
    case Term::Kind::Var: case Term::Kind::Zero: case Term::Kind::One: return false;
    case Term::Kind::Succ: return mentions_top(t.lhs());
    case Term::Kind::Sum: case Term::Kind::Prod: return mentions_top(t.lhs()) || mentions_top(t.rhs());
  }
  return false;
}

bool mentions_top(const Formula& f) {
  return any_node(f, [](const Formula& g) {
    if (g.is_atom())
      return std::any_of(g.terms().begin(), g.terms().end(), [](const Term& t) { return mentions_top(t); });
    if (g.is_quantifier() && g.bound()) return mentions_top(*g.bound());
    return false;
  });
}

bool is_first_order(const Formula& f) {
  return !any_node(f, [](const Formula& g) { return g.is_modal_operator(); });
}

bool is_delta0(const Formula& f) {
  return !any_node(f, [](const Formula& g) {
    return g.is_modal_operator() || (g.is_quantifier() && !g.bound());
  });
}

std::size_t depth(const Formula& f) {
  using K = Formula::Kind;
  if (f.is_atom()) return 1;
  switch (f.kind()) {
    case K::And: case K::Or: case K::Implies:
      return 1 + std::max(depth(f.lhs()), depth(f.rhs()));
    default:
      return 1 + depth(f.lhs());
  }
}

// --- Substitution -------------------------------------------------------------

Term substitute(const Term& t, const std::string& var, const Term& replacement) {
  switch (t.kind()) {
    case Term::Kind::Var: return t.name() == var ? replacement : t;
    case Term::Kind::Zero: case Term::Kind::One: case Term::Kind::Top: return t;
    case Term::Kind::Succ: return Term::succ(substitute(t.lhs(), var, replacement));
    case Term::Kind::Sum:
      return Term::sum(substitute(t.lhs(), var, replacement), substitute(t.rhs(), var, replacement));
    case Term::Kind::Prod:
      return Term::prod(substitute(t.lhs(), var, replacement), substitute(t.rhs(), var, replacement));
  }
  return t;
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (std::size_t i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

Formula rebuild_quantifier(Formula::Kind kind, std::string var, std::optional<Term> bound, Formula body) {
  return kind == Formula::Kind::Forall ? Formula::forall(std::move(var), std::move(bound), std::move(body))
                                       : Formula::exists(std::move(var), std::move(bound), std::move(body));
}

}  // namespace

Formula substitute(const Formula& f, const std::string& var, const Term& replacement) {
  using K = Formula::Kind;
  auto sub_terms = [&](const Formula& g) {
    std::vector<Term> ts;
    for (const auto& t : g.terms()) ts.push_back(substitute(t, var, replacement));
    return ts;
  };
  switch (f.kind()) {
    case K::Eq: { auto ts = sub_terms(f); return Formula::eq(ts[0], ts[1]); }
    case K::Lt: { auto ts = sub_terms(f); return Formula::lt(ts[0], ts[1]); }
    case K::Defined: { auto ts = sub_terms(f); return Formula::defined(ts[0]); }
    case K::PlusAtom: { auto ts = sub_terms(f); return Formula::plus_atom(ts[0], ts[1], ts[2]); }
    case K::TimesAtom: { auto ts = sub_terms(f); return Formula::times_atom(ts[0], ts[1], ts[2]); }
    case K::Not: return Formula::negation(substitute(f.lhs(), var, replacement));
    case K::Possibly: return Formula::possibly(substitute(f.lhs(), var, replacement));
    case K::Necessarily: return Formula::necessarily(substitute(f.lhs(), var, replacement));
    case K::And:
      return Formula::conjunction(substitute(f.lhs(), var, replacement), substitute(f.rhs(), var, replacement));
    case K::Or:
      return Formula::disjunction(substitute(f.lhs(), var, replacement), substitute(f.rhs(), var, replacement));
    case K::Implies:
      return Formula::implication(substitute(f.lhs(), var, replacement), substitute(f.rhs(), var, replacement));
    case K::Forall:
    case K::Exists: {
      std::optional<Term> bound;
      if (f.bound()) bound = substitute(*f.bound(), var, replacement);
      const auto body_free = free_variables(f.body());
      const auto repl_free = free_variables(replacement);
      const bool into_body = f.var() != var && body_free.count(var);
      // The bound lives in the outer scope, so the replacement may bring the
      // quantified variable into it; rename in that case too.
      const bool captured = (into_body && repl_free.count(f.var())) || (bound && free_variables(*bound).count(f.var()));
      std::string bound_var = f.var();
      Formula body = f.body();
      if (captured) {
        std::set<std::string> avoid = body_free;
        avoid.insert(repl_free.begin(), repl_free.end());
        avoid.insert(var);
        if (bound) {
          auto bf = free_variables(*bound);
          avoid.insert(bf.begin(), bf.end());
        }
        std::string renamed = fresh_name(bound_var, avoid);
        body = substitute(body, bound_var, Term::var(renamed));
        bound_var = renamed;
      }
      if (!into_body) return rebuild_quantifier(f.kind(), bound_var, bound, body);
      return rebuild_quantifier(f.kind(), bound_var, bound, substitute(body, var, replacement));
    }
  }
  return f;
}

Formula induction_instance(const Formula& phi, const std::string& v) {
  if (!is_first_order(phi)) throw std::invalid_argument("induction instances are first-order only");
  if (!free_variables(phi).count(v)) throw std::invalid_argument("variable '" + v + "' is not free in " + to_string(phi));
  const Term x = Term::var(v);
  Formula base = substitute(phi, v, Term::zero());
  Formula step = Formula::forall(v, Term::top(),
                                 Formula::implication(phi, substitute(phi, v, Term::sum(x, Term::one()))));
  return Formula::implication(Formula::conjunction(base, step), Formula::forall(v, std::nullopt, phi));
}

// --- Printing -----------------------------------------------------------------

namespace {

int precedence(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Sum: return 1;
    case Term::Kind::Prod: return 2;
    default: return 3;
  }
}

void print(std::string& out, const Term& t, int min_prec) {
  const int p = precedence(t);
  const bool parens = p < min_prec;
  if (parens) out += '(';
  switch (t.kind()) {
    case Term::Kind::Var: out += t.name(); break;
    case Term::Kind::Zero: out += '0'; break;
    case Term::Kind::One: out += '1'; break;
    case Term::Kind::Top: out += 'N'; break;
    case Term::Kind::Succ:
      out += "S(";
      print(out, t.lhs(), 0);
      out += ')';
      break;
    case Term::Kind::Sum:
      print(out, t.lhs(), 1);
      out += " + ";
      print(out, t.rhs(), 2);
      break;
    case Term::Kind::Prod:
      print(out, t.lhs(), 2);
      out += " * ";
      print(out, t.rhs(), 3);
      break;
  }
  if (parens) out += ')';
}

int precedence(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Implies: return 1;
    case K::Or: return 2;
    case K::And: return 3;
    case K::Not: case K::Possibly: case K::Necessarily: return 4;
    case K::Forall: case K::Exists: return 4;
    default: return 5;
  }
}

// `tail`: nothing follows this text inside the enclosing scope, so a
// quantifier (whose scope extends maximally right) needs no parentheses.
void print(std::string& out, const Formula& f, int min_prec, bool tail) {
  using K = Formula::Kind;
  const int p = precedence(f);
  bool parens = p < min_prec;
  if (f.is_quantifier() && !tail) parens = true;
  if (parens) {
    out += '(';
    tail = true;
  }
  auto binary = [&](const char* op, int lprec, int rprec) {
    print(out, f.lhs(), lprec, false);
    out += op;
    print(out, f.rhs(), rprec, tail);
  };
  switch (f.kind()) {
    case K::Eq:
      print(out, f.terms()[0], 0);
      out += " = ";
      print(out, f.terms()[1], 0);
      break;
    case K::Lt:
      print(out, f.terms()[0], 0);
      out += " < ";
      print(out, f.terms()[1], 0);
      break;
    case K::Defined:
      out += "Def(";
      print(out, f.terms()[0], 0);
      out += ')';
      break;
    case K::PlusAtom:
    case K::TimesAtom:
      out += f.kind() == K::PlusAtom ? "Plus(" : "Times(";
      for (std::size_t i = 0; i < 3; ++i) {
        if (i) out += ", ";
        print(out, f.terms()[i], 0);
      }
      out += ')';
      break;
    case K::Not:
      out += '!';
      print(out, f.lhs(), 4, tail);
      break;
    case K::Possibly:
      out += "dia ";
      print(out, f.lhs(), 4, tail);
      break;
    case K::Necessarily:
      out += "box ";
      print(out, f.lhs(), 4, tail);
      break;
    case K::And: binary(" & ", 3, 4); break;
    case K::Or: binary(" | ", 2, 3); break;
    case K::Implies: binary(" -> ", 2, 1); break;
    case K::Forall:
    case K::Exists:
      out += f.kind() == K::Forall ? "A " : "E ";
      out += f.var();
      if (f.bound()) {
        out += " < ";
        print(out, *f.bound(), 0);
      }
      out += ". ";
      print(out, f.body(), 0, tail);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print(out, t, 0);
  return out;
}

std::string to_string(const Formula& f) {
  std::string out;
  print(out, f, 0, true);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }
std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

}  // namespace fa
