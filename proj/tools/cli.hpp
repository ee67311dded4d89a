// Command-line front end; `run_cli` is separate from main so tests can drive it.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace keyrep::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

/// Parses "a", "a:b", "a:b:linear|geometric" or "a:b:linear|geometric:count".
/// Linear without a count steps by 1; geometric without a count doubles.
/// Throws std::invalid_argument on malformed input; may return an empty grid.
std::vector<double> parse_grid(const std::string& spec);

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace keyrep::cli
