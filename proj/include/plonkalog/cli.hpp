#pragma once

#include <string>
#include <vector>

namespace plonkalog {

struct CliResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one CLI invocation (args exclude argv[0]). Exit codes: 0 holds /
/// valid / success, 1 semantic negative, 2 usage or input error.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace plonkalog
