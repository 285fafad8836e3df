#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "gcf237/engine.hpp"

namespace gcf237 {

// One expand invocation, as shared by the CLI `expand` command and batch lines.
struct ExpandArgs {
  std::string alpha, beta, z, w, b0;
  std::string sign = "+";
  long max_digits = 10000;
  long precision = 64;
  long max_precision = 4096;
  long convergents = 8;
  long reduce_budget = 5000;
};

// "--flag value" tokens -> ExpandArgs (used for --batch lines)
ExpandArgs parse_expand_args(const std::vector<std::string>& tokens);

// builds the session and returns the ResultDocument
nlohmann::json run_expand(const ExpandArgs& args);
ExpansionSession make_session(const ExpandArgs& args);

// one JSON document per input line; jobs > 1 fans sessions out with OpenMP
std::vector<std::string> run_batch(const std::vector<std::string>& lines, int jobs);

std::vector<std::string> split_args(const std::string& line);

}  // namespace gcf237
