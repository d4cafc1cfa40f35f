#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cyclabel {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 1,  // invalid labeling, undefined distance, infeasible search
  kExitUsage = 2,
  kExitBudget = 3,   // time budget exhausted; the incumbent is still written
};

// "A..B" (inclusive, either direction) or "a,b,c". Throws std::invalid_argument.
std::vector<int> parse_int_list(const std::string& spec);

// Entry point of the `cyclabel` tool; data goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyclabel
