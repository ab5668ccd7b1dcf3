#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scalebench::app {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

[[nodiscard]] const char* version() noexcept;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics and progress to `err`.
[[nodiscard]] int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scalebench::app
