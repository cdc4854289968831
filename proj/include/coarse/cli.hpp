#ifndef COARSE_CLI_HPP
#define COARSE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace coarse {

// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

// Runs one command. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coarse

#endif  // COARSE_CLI_HPP
