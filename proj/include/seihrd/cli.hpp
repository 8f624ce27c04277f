#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "seihrd/config.hpp"

namespace seihrd {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNumerical = 2 };

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "SEIHRD_OUTPUT_DIR";

/// Entry point of the `seihrd` tool. Subcommands: deterministic, ensemble,
/// indicators, curves, histogram.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// --out, then [output] dir, then $SEIHRD_OUTPUT_DIR, then ./seihrd_out.
std::filesystem::path resolve_output_dir(const RunConfig& config);

}  // namespace seihrd
