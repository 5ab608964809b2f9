#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twoitem::cli {

enum ExitCode
{
  kOk            = 0,
  kUsage         = 1,
  kAuditFailure  = 2,
  kOracleMismatch = 3,
  kCapExceeded   = 4,
};

/// Environment variable consulted when --cap is absent.
inline constexpr char const *kCapEnv = "TWOITEM_PROFILE_CAP";

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out` unless --output names a file; diagnostics go to `err`.
int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

}  // namespace twoitem::cli
