#ifndef TORICMONO_CLI_HPP
#define TORICMONO_CLI_HPP

#include <string>
#include <vector>

namespace toricmono {

struct RunResult {
  int exit_code = 0;
  std::string report;  // JSON or text, per --format
};

/// Front end shared by the binary and the tests. argv excludes the program
/// name. Exit codes: 0 success, 1 computational failure, 2 hypotheses unmet.
RunResult run(const std::vector<std::string>& argv);

}  // namespace toricmono

#endif
