#pragma once

#include <iosfwd>

namespace ontic::cli {

/// Entry point of the `ontic` tool. Subcommands: verify-born, witness,
/// z-table, region-check, overlap. Machine-readable output goes to --out (or
/// `out` when absent); the human summary goes to the terminal. Returns the
/// process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ontic::cli
