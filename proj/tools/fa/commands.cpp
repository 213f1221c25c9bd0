#include "commands.hpp"

#include <fstream>
#include <sstream>

#include "fa/axioms.hpp"
#include "fa/eval.hpp"
#include "fa/interp.hpp"
#include "fa/modal.hpp"
#include "fa/tower.hpp"

namespace fa::cli {

using nlohmann::json;

namespace {

const char* verdict(bool ok) { return ok ? "pass" : "FAIL"; }

Numeral height_arg(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  Numeral n;
  try {
    n = parse_numeral(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + " expects a nonnegative integer, got '" + text + "'");
  }
  return n;
}

Numeral truncation_height(const Options& o) {
  Numeral n = height_arg(o.n, "--n");
  if (n < 1) throw UsageError("--n must be at least 1 (there is no truncation N|0)");
  return n;
}

SamplingPolicy policy(const Options& o) {
  SamplingPolicy p;
  p.seed = o.seed;
  if (o.budget) p.pair_budget = *o.budget;
  return p;
}

std::vector<Formula> corpus(const Options& o) {
  if (o.corpus.empty()) return {};
  std::ifstream in(o.corpus);
  if (!in) throw UsageError("cannot read corpus file '" + o.corpus + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str());
}

json group_json(const CheckGroup& g) {
  return {{"name", g.name}, {"passed", g.passed}, {"checked", g.checked}, {"failures", g.failures}};
}

void group_lines(Report& r, const CheckGroup& g, CheckMode mode) {
  r.lines.push_back("  " + g.name + ": " + verdict(g.passed) + " (" + std::to_string(g.checked) + " checks, " +
                    to_string(mode) + ")");
  for (const auto& f : g.failures) r.lines.push_back("    - " + f);
}

void base_params(Report& r, const Options& o) {
  r.params["seed"] = o.seed;
  if (o.budget) r.params["budget"] = *o.budget;
}

Assignment assignment(const Options& o) {
  Assignment a;
  for (const auto& item : o.assign) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--assign expects var=value, got '" + item + "'");
    try {
      a.set(item.substr(0, eq), parse_numeral(item.substr(eq + 1)));
    } catch (const std::invalid_argument&) {
      throw UsageError("--assign value is not a numeral: '" + item + "'");
    }
  }
  return a;
}

json assignment_json(const Assignment& a) {
  json j = json::object();
  for (const auto& [k, v] : a.values()) j[k] = v.str();
  return j;
}

AxiomReport axioms_into(Report& r, const Options& o, const std::vector<Formula>& fs) {
  const Numeral n = truncation_height(o);
  r.params["n"] = n.str();
  base_params(r, o);
  const FAModel m = make_truncation(n);
  const Numeral b = largest_square_base(m);
  AxiomReport ax = check_fa_axioms(m, fs, policy(o));

  json res{{"model", m.structure().describe()},
           {"individuals", std::to_string(m.size())},
           {"largest", n.str()},
           {"square_base", b.str()},
           {"mode", to_string(ax.mode)},
           {"groups", {group_json(ax.order), group_json(ax.successor), group_json(ax.arithmetic)}},
           {"passed", ax.passed()}};
  r.lines.push_back(m.structure().describe() + ": " + std::to_string(m.size()) + " individuals, largest " + n.str());
  r.lines.push_back("largest square base: " + b.str() + " (" + b.str() + " * " + b.str() + " = " +
                    Numeral(b * b).str() + ")");
  group_lines(r, ax.order, ax.mode);
  group_lines(r, ax.successor, ax.mode);
  group_lines(r, ax.arithmetic, ax.mode);
  if (!fs.empty()) {
    json ind = json::array();
    for (const auto& i : ax.induction) {
      ind.push_back({{"formula", i.formula}, {"variable", i.variable}, {"holds", i.holds}});
      r.lines.push_back("  induction on " + i.variable + " for " + i.formula + ": " + verdict(i.holds));
    }
    res["induction"] = ind;
  }
  r.results.push_back(res);
  r.lines.push_back(std::string("axioms: ") + verdict(ax.passed()));
  r.status = ax.passed() ? 0 : 1;
  return ax;
}

}  // namespace

Report cmd_truncate(const Options& o) {
  Report r{"truncate"};
  axioms_into(r, o, {});
  return r;
}

Report cmd_axioms(const Options& o) {
  Report r{"axioms"};
  auto fs = corpus(o);
  if (!o.corpus.empty()) r.params["corpus"] = o.corpus;
  axioms_into(r, o, fs);
  return r;
}

namespace {

InterpretedModel lift_model(const FAModel& m, const Options& o) {
  const std::size_t k = o.k.value_or(5);
  if (o.base.empty()) return build_plus_model(m, k);
  return build_plus_model(m, InterpParams{height_arg(o.base, "--base"), k});
}

json lift_json(const BiinterpReport& bi, const LiftReport& lr) {
  return {group_json(bi.substructure), group_json(bi.representation), group_json(bi.round_trip),
          group_json(lr.valuation),    group_json(lr.square),         group_json(lr.totality)};
}

void lift_lines(Report& r, const BiinterpReport& bi, const LiftReport& lr) {
  group_lines(r, lr.valuation, lr.valuation_mode);
  group_lines(r, lr.square, CheckMode::Exhaustive);
  group_lines(r, lr.totality, lr.totality_mode);
  group_lines(r, bi.substructure, bi.mode);
  group_lines(r, bi.representation, bi.mode);
  group_lines(r, bi.round_trip, bi.mode);
}

}  // namespace

Report cmd_lift(const Options& o) {
  Report r{"lift"};
  const Numeral n = truncation_height(o);
  r.params["n"] = n.str();
  r.params["k"] = o.k.value_or(5);
  if (!o.base.empty()) r.params["base"] = o.base;
  base_params(r, o);

  const FAModel m = make_truncation(n);
  const InterpretedModel plus = lift_model(m, o);
  const InitialEmbedding e = embed_initial(m, plus);
  const BiinterpReport bi = verify_biinterpretation(m, plus, e, policy(o));
  const LiftReport lr = verify_lift(m, plus, e, policy(o));
  const bool ok = bi.passed() && lr.passed();
  const Numeral& b = plus.params().base;
  const Numeral height = plus.model().largest();

  r.results.push_back({{"base", b.str()},
                       {"width", plus.params().width},
                       {"height", height.str()},
                       {"image_of_N", e(n).str()},
                       {"image_of_b", e(b).str()},
                       {"groups", lift_json(bi, lr)},
                       {"passed", ok}});
  r.lines.push_back(m.structure().describe() + ": b = " + b.str() + ", k = " + std::to_string(plus.params().width));
  r.lines.push_back("M+ height: " + height.str() + " (b^k - 1)");
  r.lines.push_back("e(N) = " + e(n).str() + ", e(b) = " + e(b).str());
  lift_lines(r, bi, lr);
  r.lines.push_back(std::string("lift: ") + verdict(ok));
  r.status = ok ? 0 : 1;
  return r;
}

Report cmd_tower(const Options& o) {
  Report r{"tower"};
  const Numeral n = truncation_height(o);
  const std::size_t k = o.k.value_or(5);
  r.params["n"] = n.str();
  r.params["k"] = k;
  r.params["stages"] = o.stages;
  if (!o.corpus.empty()) r.params["corpus"] = o.corpus;
  base_params(r, o);
  const auto fs = corpus(o);

  const Tower t = build_tower(make_truncation(n), o.stages, k);
  bool ok = true;
  json stages = json::array();
  std::string heights;
  for (std::size_t i = 0; i < t.size(); ++i) heights += (i ? ", " : "") + t.height(i).str();
  r.lines.push_back("heights: " + heights);
  for (std::size_t i = 0; i < t.size(); ++i) {
    json st{{"stage", i}, {"height", t.height(i).str()}};
    if (i == 0) {
      stages.push_back(st);
      continue;
    }
    const Numeral& below = t.height(i - 1);
    const bool squares = t.height(i) >= below * below;
    const auto& s = t.stage(i);
    const BiinterpReport bi = verify_biinterpretation(t.model(i - 1), *s.lift, *s.embedding, policy(o));
    const LiftReport lr = verify_lift(t.model(i - 1), *s.lift, *s.embedding, policy(o));
    const bool stage_ok = squares && bi.passed() && lr.passed();
    ok = ok && stage_ok;
    st["base"] = s.lift->params().base.str();
    st["squares"] = squares;
    st["groups"] = lift_json(bi, lr);
    st["passed"] = stage_ok;
    stages.push_back(st);
    r.lines.push_back("stage " + std::to_string(i) + ": height " + t.height(i).str() + ", b = " +
                      s.lift->params().base.str() + ", N_" + std::to_string(i) + " >= N_" + std::to_string(i - 1) +
                      "^2: " + verdict(squares));
    lift_lines(r, bi, lr);
  }
  json res{{"stages", stages}};
  if (!fs.empty()) {
    const auto rep = check_bounded_induction(t, fs);
    json entries = json::array();
    for (const auto& e : rep.entries) {
      entries.push_back({{"stage", e.stage}, {"formula", e.formula}, {"kind", e.kind}, {"holds", e.holds},
                         {"detail", e.detail}});
      r.lines.push_back("  stage " + std::to_string(e.stage) + " " + e.kind + " " + e.formula + ": " +
                        verdict(e.holds) + (e.detail.empty() ? "" : " (" + e.detail + ")"));
    }
    res["bounded_induction"] = entries;
    ok = ok && rep.passed();
  }
  res["passed"] = ok;
  r.results.push_back(res);
  r.lines.push_back(std::string("tower: ") + verdict(ok));
  r.status = ok ? 0 : 1;
  return r;
}

namespace {

StructurePtr eval_model(const Options& o, Report& r) {
  if (!o.n.empty() == o.has_subset) throw UsageError("give exactly one of --trunc or --subset");
  if (!o.n.empty()) {
    const Numeral n = truncation_height(o);
    r.params["trunc"] = n.str();
    return make_truncation(n).shared();
  }
  std::vector<Numeral> xs;
  std::string text = o.subset;
  if (text.size() >= 2 && text.front() == '{' && text.back() == '}') text = text.substr(1, text.size() - 2);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      xs.push_back(parse_numeral(item));
    } catch (const std::invalid_argument&) {
      throw UsageError("--subset expects comma-separated numerals, got '" + o.subset + "'");
    }
  }
  StructurePtr s = make_subset_world(std::move(xs));
  r.params["subset"] = s->describe();
  return s;
}

PotentialistSystem system_of(const Options& o, Report& r) {
  const int given = !o.aristotelian.empty() + !o.subsets.empty() + !o.system_file.empty() + o.fork;
  if (given != 1) throw UsageError("give exactly one of --aristotelian, --subsets, --fork, --system");
  if (!o.aristotelian.empty()) {
    const Numeral h = height_arg(o.aristotelian, "--aristotelian");
    if (h < 1) throw UsageError("--aristotelian needs a height of at least 1");
    r.params["system"] = "aristotelian";
    r.params["height"] = h.str();
    return aristotelian_system(h);
  }
  if (!o.subsets.empty()) {
    const Numeral h = height_arg(o.subsets, "--subsets");
    r.params["system"] = "subsets";
    r.params["height"] = h.str();
    try {
      return arbitrary_set_system(h);
    } catch (const std::length_error& e) {
      throw UsageError(e.what());
    }
  }
  if (o.fork) {
    r.params["system"] = "fork";
    return fork_system();
  }
  std::ifstream in(o.system_file);
  if (!in) throw UsageError("cannot read system file '" + o.system_file + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  r.params["system"] = "file";
  r.params["file"] = o.system_file;
  try {
    return load_system_json(ss.str(), o.require_constants);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::size_t world_of(const PotentialistSystem& sys, const std::string& label) {
  if (label.empty()) throw UsageError("--world is required");
  try {
    return sys.resolve(label);
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
}

std::string world_note(const PotentialistSystem& sys, std::size_t w) {
  return sys.world(w).size() == 0 ? " (empty world)" : "";
}

}  // namespace

Report cmd_eval(const Options& o) {
  Report r{"eval"};
  StructurePtr s = eval_model(o, r);
  const Formula f = parse_formula(o.formula);
  const Assignment a = assignment(o);
  r.params["formula"] = o.formula;
  if (!a.values().empty()) r.params["assign"] = assignment_json(a);
  const bool v = eval_formula(*s, f, a);
  json res{{"formula", to_string(f)}, {"value", v}};
  r.lines.push_back(v ? "true" : "false");
  if (o.trace) {
    auto trace = explain_formula(*s, f, a);
    res["trace"] = trace;
    r.lines.insert(r.lines.end(), trace.begin(), trace.end());
  }
  r.results.push_back(res);
  return r;
}

Report cmd_modal_eval(const Options& o) {
  Report r{"modal-eval"};
  const PotentialistSystem sys = system_of(o, r);
  const std::size_t w = world_of(sys, o.world);
  const Formula f = parse_formula(o.formula);
  const Assignment a = assignment(o);
  r.params["world"] = o.world;
  r.params["formula"] = o.formula;
  if (!a.values().empty()) r.params["assign"] = assignment_json(a);
  ModalEvaluator e(sys);
  const bool v = e.holds_at(w, f, a);
  json res{{"world", sys.label(w)}, {"empty_world", sys.world(w).size() == 0}, {"formula", to_string(f)},
           {"value", v}};
  r.lines.push_back(std::string(v ? "true" : "false") + " at world " + sys.label(w) + world_note(sys, w));
  if (o.trace) {
    auto trace = e.explain_at(w, f, a);
    res["trace"] = trace;
    r.lines.insert(r.lines.end(), trace.begin(), trace.end());
  }
  r.results.push_back(res);
  return r;
}

Report cmd_frame(const Options& o) {
  Report r{"frame"};
  const PotentialistSystem sys = system_of(o, r);
  const FrameReport fr = frame_properties(sys);
  r.results.push_back({{"system", sys.name()},
                       {"worlds", sys.size()},
                       {"reflexive", fr.reflexive},
                       {"transitive", fr.transitive},
                       {"directed", fr.directed},
                       {"linear", fr.linear},
                       {"classification", fr.classification}});
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  r.lines.push_back(sys.name() + ": " + std::to_string(sys.size()) + " worlds");
  r.lines.push_back(std::string("  reflexive: ") + yn(fr.reflexive));
  r.lines.push_back(std::string("  transitive: ") + yn(fr.transitive));
  r.lines.push_back(std::string("  directed: ") + yn(fr.directed));
  r.lines.push_back(std::string("  linear: ") + yn(fr.linear));
  r.lines.push_back("frame class: " + fr.classification);
  return r;
}

Report cmd_validate(const Options& o) {
  Report r{"validate"};
  const PotentialistSystem sys = system_of(o, r);
  if (o.schema.empty()) throw UsageError("--schema is required");
  Schema s;
  try {
    s = parse_schema(o.schema);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  r.params["schema"] = to_string(s);

  if (o.search) {
    if (s != Schema::Dot3) throw UsageError("--search is only available for the .3 schema");
    SearchOptions so;
    so.max_depth = o.depth;
    if (o.budget) so.formula_budget = *o.budget;
    r.params["search"] = true;
    r.params["depth"] = so.max_depth;
    r.params["budget"] = so.formula_budget;
    auto w = search_dot3_counterexample(sys, so);
    if (!w) {
      r.results.push_back({{"found", false}});
      r.lines.push_back(".3: no counterexample among depth-" + std::to_string(so.max_depth) + " instances");
      return r;
    }
    const Formula inst = instantiate(Schema::Dot3, w->phi, w->psi);
    r.results.push_back({{"found", true},
                         {"world", sys.label(w->world)},
                         {"empty_world", sys.world(w->world).size() == 0},
                         {"phi", to_string(w->phi)},
                         {"psi", to_string(w->psi)},
                         {"instance", to_string(inst)},
                         {"pairs_examined", w->pairs_examined}});
    r.lines.push_back(".3: counterexample at world " + sys.label(w->world) + world_note(sys, w->world));
    r.lines.push_back("  phi = " + to_string(w->phi));
    r.lines.push_back("  psi = " + to_string(w->psi));
    r.lines.push_back("  instance: " + to_string(inst));
    r.lines.push_back("  pairs examined: " + std::to_string(w->pairs_examined));
    r.status = 1;
    return r;
  }

  std::vector<Formula> fs;
  if (o.corpus.empty()) {
    fs = generate_formulas(2);
    r.params["corpus"] = "generated, depth <= 2";
  } else {
    fs = corpus(o);
    r.params["corpus"] = o.corpus;
  }
  const bool binary = s == Schema::K || s == Schema::Dot3;
  std::vector<std::pair<Formula, Formula>> instances;
  for (const auto& phi : fs) {
    if (!binary) {
      instances.emplace_back(phi, phi);
      continue;
    }
    for (const auto& psi : fs) instances.emplace_back(phi, psi);
  }
  std::vector<SchemaFailure> failures;
  try {
    failures = check_schema(sys, s, instances);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (const auto& f : failures) {
    r.results.push_back({{"world", sys.label(f.world)},
                         {"empty_world", sys.world(f.world).size() == 0},
                         {"phi", to_string(f.phi)},
                         {"psi", to_string(f.psi)},
                         {"instance", to_string(f.instance)}});
    r.lines.push_back("counterexample at world " + sys.label(f.world) + world_note(sys, f.world) + ": " +
                      to_string(f.instance));
  }
  r.lines.push_back(std::string(to_string(s)) + ": " +
                    (failures.empty() ? "none within corpus" : std::to_string(failures.size()) + " counterexamples") +
                    " (" + std::to_string(instances.size()) + " instances, " + std::to_string(sys.size()) +
                    " worlds)");
  r.status = failures.empty() ? 0 : 1;
  return r;
}

Report cmd_translate(const Options& o) {
  Report r{"translate"};
  const Formula f = parse_formula(o.formula);
  r.params["formula"] = o.formula;
  r.params["relational"] = o.relational;
  Formula t = f;
  try {
    t = potentialist_translation(o.relational ? relational_form(f) : f);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  r.results.push_back({{"formula", to_string(f)}, {"translated", to_string(t)}});
  r.lines.push_back(to_string(t));
  return r;
}

Report cmd_translation_theorem(const Options& o) {
  Report r{"translation-theorem"};
  const PotentialistSystem sys = system_of(o, r);
  if (o.corpus.empty()) throw UsageError("--corpus is required");
  r.params["corpus"] = o.corpus;
  r.params["relational"] = o.relational;
  const auto fs = corpus(o);
  TranslationReport rep;
  try {
    rep = check_translation_theorem(sys, fs, o.relational);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  std::size_t checked = 0;
  for (const auto& row : rep.rows) {
    json j{{"formula", row.formula}};
    if (!row.excluded.empty()) {
      j["excluded"] = row.excluded;
      r.results.push_back(j);
      r.lines.push_back("skip " + row.formula + ": " + row.excluded);
      continue;
    }
    ++checked;
    std::string cells;
    for (bool v : row.world_values) cells += v ? 'T' : 'F';
    json viol = json::array();
    for (auto w : row.violations) viol.push_back(sys.label(w));
    j["translated"] = row.translated;
    j["limit"] = row.limit_value;
    j["worlds"] = cells;
    j["violations"] = viol;
    r.results.push_back(j);
    r.lines.push_back(std::string(row.violations.empty() ? "ok   " : "FAIL ") + row.formula);
    r.lines.push_back("     limit " + std::string(row.limit_value ? "T" : "F") + ", worlds " + cells);
    if (!row.violations.empty()) {
      std::string ws;
      for (auto w : row.violations) ws += (ws.empty() ? "" : ", ") + sys.label(w);
      r.lines.push_back("     disagrees at " + ws);
    }
  }
  r.lines.push_back("translation theorem: " + std::string(verdict(rep.passed())) + " (" + std::to_string(checked) +
                    " sentences, " + std::to_string(sys.size()) + " worlds)");
  r.status = rep.passed() ? 0 : 1;
  return r;
}

}  // namespace fa::cli
