#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gvp {

// Exit codes: 0 ok, 2 config error, 3 admissibility rejection, 4 numerical failure.
enum ExitCode { exit_ok = 0, exit_config = 2, exit_admissibility = 3, exit_numerical = 4 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gvp
