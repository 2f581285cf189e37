#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace invopt {

// Parses and executes one CLI invocation; `argv` excludes the program name.
// Human-readable results go to `out`, diagnostics to `err`. Returns 0 on
// success, 1 on input errors (unknown subcommand or flag, malformed numbers,
// unreadable catalog, invalid parameter combinations), 2 on internal errors.
int run_command(const std::vector<std::string>& argv, std::ostream& out,
                std::ostream& err);

}  // namespace invopt
