#pragma once

#include <iosfwd>

namespace bdi::cli {

enum ExitCode : int {
  kSuccess = 0,
  kPropertyFalse = 1,
  kInputError = 2,
  kInvariantFailure = 3,
};

/// Runs the command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bdi::cli
