#pragma once

#include <iosfwd>
#include <string>

#include "spotbid/error.hpp"

namespace spotbid::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,     // bad or missing flags, invalid band/gains/initial bid
  kExitData = 2,      // unreadable, malformed or invalid input data; unwritable output
  kExitInternal = 3,  // anything else
};

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Entry point behind the `spotbid` binary. Reports and traces go to --out
/// when given, else to `out`. Diagnostics go to stderr, filtered by the
/// SPOTBID_LOG environment variable (error|warn|info|debug, default warn).
int run(int argc, const char* const* argv, std::ostream& out);

}  // namespace spotbid::cli
