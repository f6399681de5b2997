#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "laurent/types.hpp"

namespace laurent::cli {

struct RunConfig {
  int grid = 256;
  int quad = 1024;
  int range_lo = -8;
  int range_hi = 8;
  std::filesystem::path out = ".";
  std::string format = "json";
  std::string nu;

  /// Throws InvalidArgument unless grid >= 8, quad >= 8 and the range is nonempty.
  void validate() const;
};

/// "LO:HI"; throws InvalidArgument.
std::pair<int, int> parse_range(const std::string& text);

/// 0 for success, 1 for input errors, 2 for analysis errors.
int exit_code(ErrorCode code);

/// Runs one invocation. args excludes the program name. Artifacts go to
/// config.out, the run summary to out and structured errors to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace laurent::cli
