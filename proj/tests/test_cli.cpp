#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "cli_cases.hpp"
#include "fa/modal.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fa::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expected_code = 0) {
  args.insert(args.begin(), {"--format", "json"});
  Run r = run(args);
  INFO(r.err);
  REQUIRE(r.code == expected_code);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("golden reports") {
  const bool update = std::getenv("FA_UPDATE_GOLDEN") != nullptr;
  for (const auto& g : fa::testing::golden_cases()) {
    CAPTURE(g.name);
    std::vector<std::string> args{"--format", "json"};
    args.insert(args.end(), g.args.begin(), g.args.end());
    Run r = run(args);
    INFO(r.err);
    REQUIRE(r.code == g.code);
    const std::string path = std::string("tests/golden/") + g.name + ".json";
    const std::string got = fa::testing::redacted(r.out);
    if (update) {
      std::ofstream(path) << got;
      continue;
    }
    std::ifstream in(path);
    REQUIRE_MESSAGE(in, "missing golden " << path);
    std::stringstream want;
    want << in.rdbuf();
    CHECK(got == want.str());
  }
}

TEST_CASE("repeated runs are byte-identical after redaction") {
  for (const auto& g : fa::testing::golden_cases()) {
    CAPTURE(g.name);
    std::vector<std::string> args{"--format", "json"};
    args.insert(args.end(), g.args.begin(), g.args.end());
    Run a = run(args), b = run(args);
    CHECK(a.code == b.code);
    CHECK(fa::testing::redacted(a.out) == fa::testing::redacted(b.out));
    json doc = json::parse(a.out);
    CHECK(doc.contains("timings"));
    CHECK(doc.at("timings").contains("total_ms"));
  }
}

TEST_CASE("reports have the documented shape with sorted keys") {
  json doc = run_json({"frame", "--aristotelian", "30"});
  CHECK(doc.at("command") == "frame");
  CHECK(doc.at("params").is_object());
  CHECK(doc.at("results").is_array());
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"command", "params", "results", "timings"});
  CHECK(doc.at("results")[0].at("classification") == "S4.3");
}

TEST_CASE("exit codes") {
  CHECK(run({"axioms", "--n", "100", "--corpus", "corpora/basic.fml"}).code == 0);
  Run zero = run({"axioms", "--n", "0"});
  CHECK(zero.code == 2);
  CHECK(zero.err.find("error:") == 0);
  Run narrow = run({"lift", "--n", "8"});
  CHECK(narrow.code == 2);
  CHECK(narrow.err.find("minimal admissible k is 7") != std::string::npos);
  CHECK(run({"eval", "--trunc", "10", "A a. E b. b = + 1"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--format", "yaml", "frame", "--fork"}).code == 2);
  CHECK(run({"modal-eval", "--subsets", "1", "--world", "{7}", "0 = 0"}).code == 2);
  CHECK(run({"translation-theorem", "--fork", "--corpus", "corpora/sentences.fml"}).code == 2);
  CHECK(run({"axioms", "--n", "5", "--corpus", "corpora/missing.fml"}).code == 2);
  // a false formula is still a successful evaluation
  CHECK(run({"eval", "--trunc", "10", "A a. E b. b = a + 1"}).code == 0);
  CHECK(run({"validate", "--aristotelian", "6", "--schema", "dot3", "--corpus", "corpora/modal_instances.fml"}).code == 0);
  CHECK(run({"validate", "--subsets", "1", "--schema", "dot3", "--search"}).code == 1);
  CHECK(run({"translation-theorem", "--subsets", "2", "--corpus", "corpora/nonrelational.fml"}).code == 1);
  CHECK(run({"translation-theorem", "--subsets", "2", "--corpus", "corpora/nonrelational.fml", "--relational"}).code == 0);
}

TEST_CASE("text output examples") {
  Run e = run({"eval", "--trunc", "10", "A a. E b. b = a + 1", "--trace"});
  CHECK(e.out.find("false") != std::string::npos);
  CHECK(e.out.find("counterexample a = 10") != std::string::npos);
  Run m = run({"modal-eval", "--aristotelian", "30", "--world", "10", "A a. dia E b. b = a + 1"});
  CHECK(m.out.find("true") != std::string::npos);
  Run t = run({"translate", "E x. x = 1 + 1"});
  CHECK(t.out == "dia E x. x = 1 + 1\n");
  Run f = run({"frame", "--subsets", "2"});
  CHECK(f.out.find("S4.2") != std::string::npos);
  Run l = run({"lift", "--n", "100"});
  CHECK(l.code == 0);
  CHECK(l.out.find("99999") != std::string::npos);
  Run w = run({"tower", "--n", "12", "--stages", "2", "--budget", "20000"});
  CHECK(w.out.find("759374") != std::string::npos);
}

TEST_CASE("witnesses in reports reproduce") {
  SUBCASE("schema counterexample") {
    json doc = run_json({"validate", "--subsets", "1", "--schema", "dot3", "--search"}, 1);
    const json& r = doc.at("results")[0];
    fa::PotentialistSystem sys = fa::arbitrary_set_system(fa::parse_numeral(doc.at("params").at("height").get<std::string>()));
    const std::size_t w = sys.resolve(r.at("world").get<std::string>());
    fa::Formula phi = fa::parse_formula(r.at("phi").get<std::string>());
    fa::Formula psi = fa::parse_formula(r.at("psi").get<std::string>());
    CHECK_FALSE(fa::eval_modal(sys, w, fa::instantiate(fa::Schema::Dot3, phi, psi)));
    CHECK(fa::to_string(fa::instantiate(fa::Schema::Dot3, phi, psi)) == r.at("instance"));
  }
  SUBCASE("translation violations") {
    json doc = run_json({"translation-theorem", "--subsets", "2", "--corpus", "corpora/nonrelational.fml"}, 1);
    fa::PotentialistSystem sys = fa::arbitrary_set_system(2);
    int seen = 0;
    for (const json& row : doc.at("results")) {
      fa::Formula psi = fa::parse_formula(row.at("formula").get<std::string>());
      fa::Formula tr = fa::parse_formula(row.at("translated").get<std::string>());
      CHECK(fa::eval_formula(*sys.limit(), psi) == row.at("limit").get<bool>());
      for (const json& label : row.at("violations")) {
        CHECK(fa::eval_modal(sys, sys.resolve(label.get<std::string>()), tr) != row.at("limit").get<bool>());
        ++seen;
      }
    }
    CHECK(seen > 0);
  }
  SUBCASE("eval counterexample") {
    json doc = run_json({"eval", "--trunc", "10", "A a. E b. b = a + 1", "--trace"});
    const std::string line = doc.at("results")[0].at("trace")[0];
    const std::string value = line.substr(line.rfind(' ') + 1);
    CHECK_FALSE(fa::eval_formula(fa::make_truncation(10).structure(), fa::parse_formula("E b. b = a + 1"),
                                 {{"a", fa::parse_numeral(value)}}));
  }
}
