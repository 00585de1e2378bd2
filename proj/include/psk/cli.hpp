#pragma once

#include <iosfwd>

namespace psk::cli {

// Process exit codes. Stable: scripts depend on them.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParseError = 2,
    kUnsupportedDiagram = 3,
    kTimeout = 4,
    kNoRows = 5,
    kRejected = 6,
    kHashMismatch = 7,
};

// Entry point behind the `psk` binary: subcommands compute, census, verify.
// Reports go to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psk::cli
