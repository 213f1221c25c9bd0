#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "fa/eval.hpp"
#include "fa/formula.hpp"
#include "fa/model.hpp"

namespace fa {

/// A finite family of worlds with an accessibility relation and an optional
/// limit structure. Worlds share the limit's individuals: the inclusion of a
/// world into the limit is the identity on handles.
class PotentialistSystem {
 public:
  PotentialistSystem(std::string name, std::vector<std::string> labels, std::vector<StructurePtr> worlds,
                     std::vector<boost::dynamic_bitset<>> access, StructurePtr limit = nullptr);

  const std::string& name() const { return name_; }
  std::size_t size() const { return worlds_.size(); }
  const std::string& label(std::size_t w) const { return labels_.at(w); }
  const Structure& world(std::size_t w) const { return *worlds_.at(w); }
  const StructurePtr& world_ptr(std::size_t w) const { return worlds_.at(w); }
  bool accessible(std::size_t u, std::size_t v) const { return access_.at(u).test(v); }
  /// Worlds accessible from u, as a bitset over world indices.
  const boost::dynamic_bitset<>& successors(std::size_t u) const { return access_.at(u); }
  const StructurePtr& limit() const { return limit_; }

  /// World index by label; "empty" also names the empty world "{}".
  std::optional<std::size_t> find(const std::string& label) const;
  /// Like find, but accepts a decimal index too; throws std::out_of_range.
  std::size_t resolve(const std::string& label_or_index) const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<StructurePtr> worlds_;
  std::vector<boost::dynamic_bitset<>> access_;
  StructurePtr limit_;
};

/// Worlds N|1 .. N|H, access by height, limit N|H. Labels are the heights.
PotentialistSystem aristotelian_system(const Numeral& height);

/// All subsets of {0..H} as induced substructures, access by inclusion,
/// limit N|H. Labels like "{0,2}"; the empty world is "{}". Throws
/// std::length_error when 2^(H+1) exceeds the world budget.
PotentialistSystem arbitrary_set_system(const Numeral& height, std::size_t world_budget = 4096);

/// A root with two incomparable leaves: a preorder that is not directed.
PotentialistSystem fork_system();

/// Ad hoc systems from JSON:
///   {"name": ..., "worlds": [{"label": "a", "individuals": [0, 1]} |
///                            {"label": "b", "truncation": 5}, ...],
///    "access": [["a", "b"], ...], "limit": {"truncation": 5} | {"individuals": [...]}}
/// Access pairs are taken as given (reflexive pairs must be listed). Throws
/// std::invalid_argument on malformed input or if validate() finds problems.
PotentialistSystem load_system_json(const std::string& text, bool require_constants = false);

/// Structural problems: access not reflexive or not transitive, a world not
/// extended by an accessible one, and when a limit is present a world not
/// included in it or not extendable to absorb one of its individuals.
std::vector<std::string> validate(const PotentialistSystem& sys);
/// Only the limit-related problems of validate().
std::vector<std::string> convergence_problems(const PotentialistSystem& sys);

/// Kripke evaluation over a system: dia/box quantify over accessible worlds,
/// individuals are rigid, quantifiers range over the current world. Results
/// of modal subformulas are memoized per (subformula, world, free values);
/// formulas passed in are kept alive for the evaluator's lifetime.
class ModalEvaluator : public Evaluator {
 public:
  explicit ModalEvaluator(const PotentialistSystem& sys) : sys_(sys) {}

  bool holds_at(std::size_t world, const Formula& f, const Assignment& a = {});
  std::vector<std::string> explain_at(std::size_t world, const Formula& f, const Assignment& a = {});
  /// Truth set over all worlds of a closed formula.
  boost::dynamic_bitset<> truth_set(const Formula& f);

  const PotentialistSystem& system() const { return sys_; }

 protected:
  bool holds_modal(const World& w, const Formula& f, Env& env) override;
  void explain_modal(const World& w, const Formula& f, Env& env, bool truth, std::vector<std::string>& out,
                     int indent) override;

 private:
  struct Key {
    const void* node;
    std::size_t world;
    std::vector<Numeral> values;
    friend bool operator<(const Key& a, const Key& b) {
      return std::tie(a.node, a.world, a.values) < std::tie(b.node, b.world, b.values);
    }
  };
  World at(std::size_t w) const { return World{&sys_.world(w), w}; }
  void prepare(std::size_t world, const Formula& f, const Assignment& a);
  const std::vector<std::string>& free_of(const Formula& f);

  const PotentialistSystem& sys_;
  std::vector<Formula> pinned_;
  std::map<const void*, std::vector<std::string>> free_;
  std::map<Key, bool> memo_;
};

/// Throws std::out_of_range for a bad world, UnassignedVariable, or
/// DomainError when an assigned value is not an individual of the world.
bool eval_modal(const PotentialistSystem& sys, std::size_t world, const Formula& f, const Assignment& a = {});
std::vector<std::string> explain_modal(const PotentialistSystem& sys, std::size_t world, const Formula& f,
                                       const Assignment& a = {});

/// Replaces unbounded E x by dia E x and A x by box A x; bounded quantifiers
/// keep their form (their bodies are translated). Throws
/// std::invalid_argument on modal input.
Formula potentialist_translation(const Formula& psi);

/// The same assertion over the graph relations: every compound term and
/// constant becomes an existentially quantified variable pinned down by
/// Plus/Times/equality atoms, and bounded quantifiers become guarded
/// unbounded ones. Equivalent to psi in every structure; its atoms only
/// relate variables, or a variable to a constant.
Formula relational_form(const Formula& psi);

/// Every atom relates variables, or equates a variable with 0, 1 or N, and
/// every quantifier is unbounded.
bool is_relational(const Formula& psi);

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TranslationRow {
  std::string formula;
  std::string translated;
  /// Empty when checked; otherwise why the formula was left out.
  std::string excluded;
  bool limit_value = false;
  /// Truth of the translation at each world.
  std::vector<bool> world_values;
  /// Worlds where the translation disagrees with the limit.
  std::vector<std::size_t> violations;
};

struct TranslationReport {
  bool relational = false;
  std::vector<TranslationRow> rows;
  bool passed() const;
};

/// For each closed, N-free, first-order corpus formula, compares its truth
/// in the limit with the truth of its potentialist translation at every
/// world. With `relational`, the translation is applied to relational_form.
/// Throws PreconditionError when the system has no limit or fails the
/// convergence condition.
TranslationReport check_translation_theorem(const PotentialistSystem& sys, const std::vector<Formula>& corpus,
                                            bool relational = false);

struct FrameReport {
  bool reflexive = false;
  bool transitive = false;
  bool directed = false;
  bool linear = false;
  /// "S4.3", "S4.2", "S4" or "none".
  std::string classification;
};

/// directed: any two worlds accessible from a common world have a common
/// accessible upper bound. linear: any two worlds accessible from a common
/// world are comparable. Both are reported only on top of a preorder.
FrameReport frame_properties(const PotentialistSystem& sys);

enum class Schema { K, T, Four, Dot2, Dot3 };

const char* to_string(Schema s);
/// Accepts k, t, four/4, dot2/.2, dot3/.3 in any case. Throws std::invalid_argument.
Schema parse_schema(const std::string& name);
/// The schema with phi and psi substituted for its metavariables.
Formula instantiate(Schema s, const Formula& phi, const Formula& psi);

struct SchemaFailure {
  std::size_t world;
  Formula phi;
  Formula psi;
  Formula instance;
};

/// Every (world, instance) at which the schema fails. Throws
/// std::invalid_argument if an instance formula is open.
std::vector<SchemaFailure> check_schema(const PotentialistSystem& sys, Schema s,
                                        const std::vector<std::pair<Formula, Formula>>& instances);

/// Depth-bounded closed formulas over the atoms Def(0), Def(1), Def(1 + 1)
/// built with !, dia, box, &, |, in a fixed order by depth (atoms have
/// depth 1). Stops after `budget` formulas.
std::vector<Formula> generate_formulas(std::size_t max_depth, std::size_t budget = std::size_t(-1));

struct SearchOptions {
  std::size_t max_depth = 3;
  /// Cap on generated formulas.
  std::size_t formula_budget = 4096;
};

struct Dot3Witness {
  std::size_t world;
  Formula phi;
  Formula psi;
  /// Instance pairs examined before the witness, inclusive.
  std::size_t pairs_examined;
};

/// Walks generated pairs (phi, psi) ordered by the larger generator index,
/// and returns the first failure of Dot3 at the least world. Every witness
/// is confirmed by eval_modal before it is returned.
std::optional<Dot3Witness> search_dot3_counterexample(const PotentialistSystem& sys, const SearchOptions& opts = {});

}  // namespace fa
