#pragma once

#include <iosfwd>

namespace qline::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,     // verification failed, I/O error
  kInvalid = 2,     // bad arguments, invalid parameters, malformed spec
  kQuadrature = 3,  // integration could not meet its tolerance
};

/// Entry point of the `qline` executable, with streams injectable for tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qline::cli
