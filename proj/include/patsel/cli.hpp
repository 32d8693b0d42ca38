#pragma once

#include <string>
#include <vector>

namespace patsel {

struct CliConfig {
  enum class Command { show, select, rewrite };
  Command command = Command::show;
  std::string term_path;
  std::string pattern;     // select, rewrite
  std::string rules_path;  // rewrite
  std::string rule_name;   // rewrite
  std::vector<std::string> where_bindings;  // "?name = term"
  bool symmetric = false;
  bool all = false;
  bool ascii = false;
  bool debruijn = false;
};

struct CliResult {
  std::string out;
  std::string err;
  int exit_code = 0;
};

// Exit codes: 0 success, 1 parse/input error, 2 empty selection (rewrite),
// 3 rule not applicable or uninstantiated schematic, 4 name clash or bad
// where-binding. `select` reports zero selections with exit 0.
CliResult run_command(const CliConfig& cfg);

}  // namespace patsel
