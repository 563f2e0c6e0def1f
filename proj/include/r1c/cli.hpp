#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace r1c::cli {

/// Executes one CLI invocation (argv without the program name). The report
/// goes to --out or `out`; diagnostics go to `err`. Exit codes: 0 pass,
/// 1 verification failure, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct RunOutcome {
  int exit_code = 0;
  std::string out;
  std::string err;
};

RunOutcome run_capture(const std::vector<std::string>& args);

}  // namespace r1c::cli
