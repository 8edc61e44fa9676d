#pragma once

#include <string>
#include <vector>

namespace llg {

/// Entry point behind the llgctl binary. Subcommands: simulate, hysteresis,
/// sweep, verify. Returns the process exit code: 0 success, 1 failed
/// verification, 2 configuration or usage error, 3 numerical blow-up.
int cli_main(int argc, const char* const* argv);

/// Convenience overload for tests; args excludes the program name.
int cli_main(const std::vector<std::string>& args);

}  // namespace llg
