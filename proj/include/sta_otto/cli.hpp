#ifndef STA_OTTO_CLI_HPP
#define STA_OTTO_CLI_HPP

namespace sta_otto::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { Ok = 0, ValidationFailed = 1, UsageError = 2, NumericalFailure = 3 };

/// Entry point of the sta-otto tool: subcommands cycle, sweep, crossover,
/// validate and protocol-dump.
int run(int argc, char** argv);

}  // namespace sta_otto::cli

#endif  // STA_OTTO_CLI_HPP
