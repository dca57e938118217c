#pragma once

#include <ostream>

namespace mahler::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kDegenerate = 3,
  kNotSymmetric = 4,
  kCertificateInvalid = 5,
  kChecksFailed = 6,
};

/// Entry point of the `mahler` tool; results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mahler::cli
