#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spines::cli {

inline constexpr const char* kToolName = "spines";
inline constexpr const char* kVersion = "0.1.0";
/// Environment variable naming the directory reports go to when --output is absent.
inline constexpr const char* kOutputDirEnv = "SPINES_OUTPUT_DIR";

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/**
 * Runs one subcommand. args excludes the program name, e.g.
 * {"constants", "--m", "16", "--d", "2"}. Reports go to --output, to
 * $SPINES_OUTPUT_DIR/<subcommand>.<ext>, or to out, in that order of
 * preference; diagnostics go to err.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// key=value lines ('#' starts a comment); keys are long option names without dashes.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

}  // namespace spines::cli
