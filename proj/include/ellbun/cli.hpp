#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ellbun/curve_group.hpp"

namespace ellbun::cli {

/// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSuiteFailed = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitHypotheses = 4;

/// Executes one command line (without the program name). Output goes to
/// out; diagnostics for text mode go to err. `env_curve` is the value of
/// ELLBUN_CURVE, if set; --curve overrides it.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                const std::optional<std::string>& env_curve = std::nullopt);

/// Runs a JSON scenario file and prints one line per scenario plus a
/// summary. Returns kExitOk iff every scenario passes. Throws
/// Error(BadScenarioFile) on unreadable or malformed input.
int run_suite(const std::string& path, std::ostream& out);

}  // namespace ellbun::cli
