#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace freeqg {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_usage = 2,
    exit_resource = 3,
    exit_check_failed = 4,
};

/// Runs the command line `args` (args[0] is the program name), writing
/// results to `out` and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// The invariant suite run by `check`.
std::vector<CheckResult> run_invariant_suite();

} // namespace freeqg
