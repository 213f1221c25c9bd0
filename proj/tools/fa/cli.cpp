#include "cli.hpp"

#include <chrono>
#include <functional>
#include <ostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace fa::cli {

namespace {

void add_system_flags(CLI::App* sub, Options& o) {
  sub->add_option("--aristotelian", o.aristotelian, "Truncations N|1 .. N|H ordered by height");
  sub->add_option("--subsets", o.subsets, "All subsets of {0..H} ordered by inclusion");
  sub->add_flag("--fork", o.fork, "A root world with two incomparable leaves");
  sub->add_option("--system", o.system_file, "System described in a JSON file");
  sub->add_flag("--require-constants", o.require_constants, "With --system, every world must contain 0 and 1");
}

void emit(const Report& r, const Options& o, double ms, std::ostream& out) {
  if (o.format == "json") {
    nlohmann::json doc{{"command", r.command},
                       {"params", r.params},
                       {"results", r.results},
                       {"timings", {{"total_ms", ms}}}};
    out << doc.dump(2) << '\n';
    return;
  }
  for (const auto& line : r.lines) out << line << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Workbench for finite arithmetic: truncations, taller interpreted models, potentialist systems",
               "fa"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "Seed for sampled checks");
  app.add_option("--budget", o.budget, "Sampled pair count for model checks, formula cap for searches");

  std::function<Report(const Options&)> command;
  auto verb = [&](const char* name, const char* help, Report (*fn)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&command, fn] { command = fn; });
    return sub;
  };

  auto* truncate = verb("truncate", "Build N|n and check its order and arithmetic", cmd_truncate);
  truncate->add_option("--n", o.n, "Height of the truncation")->required();

  auto* axioms = verb("axioms", "Check the FA axioms, with induction instances from a corpus", cmd_axioms);
  axioms->add_option("--n", o.n, "Height of the truncation")->required();
  axioms->add_option("--corpus", o.corpus, "Induction corpus, one formula per line");

  auto* lift = verb("lift", "Interpret the taller model M+ over N|n and verify it", cmd_lift);
  lift->add_option("--n", o.n, "Height of the ground truncation")->required();
  lift->add_option("--k", o.k, "Digit-string width (default 5)");
  lift->add_option("--base", o.base, "Base (default: largest b with b*b defined)");

  auto* tower = verb("tower", "Iterate the construction and verify every stage", cmd_tower);
  tower->add_option("--n", o.n, "Height of the ground truncation")->required();
  tower->add_option("--stages", o.stages, "Number of interpreted stages (default 2)");
  tower->add_option("--k", o.k, "Digit-string width (default 5)");
  tower->add_option("--corpus", o.corpus, "Delta0 corpus for bounded induction and absoluteness");

  auto* eval = verb("eval", "Evaluate a formula in a truncation or a subset world", cmd_eval);
  eval->add_option("--trunc", o.n, "Evaluate in N|n");
  eval->add_option("--subset", o.subset, "Evaluate in the induced structure on a set, e.g. 0,2,4")
      ->each([&o](const std::string&) { o.has_subset = true; });
  eval->add_option("formula", o.formula, "Formula text")->required();
  eval->add_option("--assign", o.assign, "Free variable value, var=n (repeatable)");
  eval->add_flag("--trace", o.trace, "Print a witness/counterexample trace");

  auto* modal = verb("modal-eval", "Evaluate a modal formula at a world of a system", cmd_modal_eval);
  add_system_flags(modal, o);
  modal->add_option("--world", o.world, "World label, or #index")->required();
  modal->add_option("formula", o.formula, "Formula text")->required();
  modal->add_option("--assign", o.assign, "Free variable value, var=n (repeatable)");
  modal->add_flag("--trace", o.trace, "Print a witness/counterexample trace");

  auto* frame = verb("frame", "Frame properties and modal classification of a system", cmd_frame);
  add_system_flags(frame, o);

  auto* validate = verb("validate", "Check a modal schema on a system", cmd_validate);
  add_system_flags(validate, o);
  validate->add_option("--schema", o.schema, "K, T, 4, .2 or .3")->required();
  validate->add_option("--corpus", o.corpus, "Instance formulas (default: generated up to depth 2)");
  validate->add_flag("--search", o.search, "Search generated instances for a .3 counterexample");
  validate->add_option("--depth", o.depth, "Search depth (default 3)");

  auto* translate = verb("translate", "Potentialist translation of a formula", cmd_translate);
  translate->add_option("formula", o.formula, "Formula text")->required();
  translate->add_flag("--relational", o.relational, "Translate the relational form");

  auto* theorem = verb("translation-theorem", "Compare limit truth with translated truth at every world",
                       cmd_translation_theorem);
  add_system_flags(theorem, o);
  theorem->add_option("--corpus", o.corpus, "Sentences, one per line")->required();
  theorem->add_flag("--relational", o.relational, "Translate the relational form of each sentence");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  try {
    r = command(o);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  emit(r, o, ms, out);
  return r.status;
}

}  // namespace fa::cli
