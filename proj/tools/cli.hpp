#pragma once

#include <ostream>

namespace ugs::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kInvalid = 2;
inline constexpr int kNoGuarantee = 3;

/// Runs the command line with the given streams; returns the exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ugs::cli
