#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace fa::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  std::uint64_t seed = 20240229;
  std::optional<std::uint64_t> budget;

  std::string n;
  std::string subset;
  bool has_subset = false;
  std::optional<std::size_t> k;
  std::string base;
  std::size_t stages = 2;
  std::string corpus;

  std::string aristotelian;
  std::string subsets;
  std::string system_file;
  bool fork = false;
  bool require_constants = false;
  std::string world;

  std::string formula;
  std::vector<std::string> assign;
  bool trace = false;
  bool relational = false;
  bool search = false;
  std::string schema;
  std::size_t depth = 3;
};

/// One command's outcome: human lines plus the structured record.
struct Report {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::array();
  std::vector<std::string> lines;
  int status = 0;
};

Report cmd_truncate(const Options& o);
Report cmd_axioms(const Options& o);
Report cmd_lift(const Options& o);
Report cmd_tower(const Options& o);
Report cmd_eval(const Options& o);
Report cmd_modal_eval(const Options& o);
Report cmd_frame(const Options& o);
Report cmd_validate(const Options& o);
Report cmd_translate(const Options& o);
Report cmd_translation_theorem(const Options& o);

}  // namespace fa::cli
