#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dynanet::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kInternal = 3 };

// Runs one dynanet command line (without the program name). Results go to
// disk; progress and errors go to the two streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dynanet::cli
