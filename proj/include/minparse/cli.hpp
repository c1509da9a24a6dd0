#ifndef MINPARSE_CLI_HPP
#define MINPARSE_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace minparse {

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitVerification = 3 };

/// Runs the command line `args` (without the program name), e.g.
/// {"oracle", "--task", "dep", "--input", "train.conll"}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minparse

#endif  // MINPARSE_CLI_HPP
