#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace serialhom {

/// Command-line front end, separated from main() so tests can drive it
/// in-process. Returns the exit code: 0 success, 1 certificate-check
/// failure, 2 usage or malformed input.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace serialhom
