#pragma once

// Command-line front end. run() is the whole program minus process setup,
// so tests can drive it with captured streams.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gbs::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kResourceLimit = 2 };

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gbs::cli
