#pragma once

#include <string>
#include <vector>

#include "latmcts/config.hpp"

namespace latmcts {

// exit codes used by the CLI
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitStrictCapped = 4;

// Full CLI entry point (args exclude the program name). Returns the process
// exit code; never throws.
int run_cli(std::vector<std::string> args);

// `run` subcommand body over resolved settings; throws on I/O failure
int cmd_run(const RunSettings& settings);

}  // namespace latmcts
