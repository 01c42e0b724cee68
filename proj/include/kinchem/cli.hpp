#pragma once

#include <string>
#include <vector>

namespace kinchem {

/// Exit codes of the command-line driver.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 1,
    kExitNumericalFailure = 2,
    kExitVerifyFailure = 3,
};

/// Run the CLI with argv[0] stripped. Subcommands: simulate-kinetic,
/// simulate-cattaneo, convergence, verify.
int cli_main(const std::vector<std::string>& args);

} // namespace kinchem
