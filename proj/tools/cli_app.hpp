#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wirecomp::cli {

// Exit codes: 0 success, 2 usage/resolution/shape error, 3 check failure.
constexpr int kOk = 0;
constexpr int kUsageError = 2;
constexpr int kCheckFailed = 3;

/// Runs the CLI with the given arguments (not including argv[0]).
/// Payloads go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace wirecomp::cli
