#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccp {

// Exit codes. Solver errors not listed here exit with 1.
enum ExitCode : int {
    exit_ok = 0,
    exit_other = 1,
    exit_parse = 2,
    exit_budget = 3,
    exit_audit = 4,
    exit_precondition = 5,
    exit_rejected = 6,  // verify: the report's certificate does not check out
};

// args excludes the program name. Reports go to --out or to `out`; traces and
// diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccp
