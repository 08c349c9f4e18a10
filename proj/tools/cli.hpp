#pragma once

#include <iosfwd>

namespace mtomo::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,       // I/O or invalid input data
  kUsage = 2,         // bad command line
  kConditioning = 3,  // moment recovery aborted (too few views, ill-conditioned)
};

/// Entry point shared by the executable and the tests. argv[0] is the
/// program name.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mtomo::cli
