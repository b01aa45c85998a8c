#ifndef PARETO_TAME_TOOLS_CLI_HPP
#define PARETO_TAME_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace pareto_tame::cli {

/// Runs one command. `args` excludes the program name. Returns the exit
/// code: 0 success, 2 invalid input, 3 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pareto_tame::cli

#endif  // PARETO_TAME_TOOLS_CLI_HPP
