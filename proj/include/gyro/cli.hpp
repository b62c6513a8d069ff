#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace gyro::cli {

inline constexpr std::string_view kToolName = "gyrocheck";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode : int {
    kExitPass = 0,
    kExitViolation = 1,
    kExitInputError = 2,
};

/// Runs one subcommand. `args` excludes the program name. The JSON report
/// goes to `out` unless --out is given; diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gyro::cli
