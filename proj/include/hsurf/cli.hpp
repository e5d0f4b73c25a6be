#pragma once

#include <string>
#include <vector>

namespace hsurf {

inline constexpr const char* kArtifactVersion = "artifact 1.0";

// Parses argv-style arguments (program name excluded) and runs the selected
// subcommand.  Exit codes: 0 success, 2 configuration error, 3 numeric
// failure (quadrature or enumeration budget), 4 certificate violation (a
// verified inequality failed; the witness goes to stderr).
int run_cli(std::vector<std::string> args);

} // namespace hsurf
