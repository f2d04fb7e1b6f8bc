#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gapforge::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kPredicateFalse = 1,  // predicate fails, or the pair is provably incompatible
  kBadInput = 2,        // invalid flags or malformed input files
  kRunFailure = 3,      // simulation error or a failed built-in assertion
  kSearchTooLarge = 4,
};

// Runs one command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gapforge::cli
