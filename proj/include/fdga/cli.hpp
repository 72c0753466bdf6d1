#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace fdga {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitRefuted = 1,  ///< validation failed, or a check reported a mismatch
  kExitParse = 2,
  kExitPrecondition = 3,
  kExitInternal = 4,
  kExitUnknownAtCap = 10,
};

/// Runs the tool on `args` (program name excluded).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// FDGA_FIXTURES_DIR from the environment, else the directory baked in at build time.
std::filesystem::path fixtures_dir();

}  // namespace fdga
