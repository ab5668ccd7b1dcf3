#pragma once

#include <stdexcept>
#include <string>

namespace scalebench {

/// Coarse classification used by the CLI to pick an exit status.
enum class ErrorKind {
  validation,  // bad input, violated precondition
  numerical,   // blowup, stiffness, singular system, non-convergence
  io,          // filesystem problems
};

/// Library exception. `code()` is a stable machine-readable token
/// (e.g. "singular_matrix") that the CLI echoes as `error_code=<code>`.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

[[noreturn]] inline void throw_validation(std::string code, const std::string& message) {
  throw Error(ErrorKind::validation, std::move(code), message);
}

[[noreturn]] inline void throw_numerical(std::string code, const std::string& message) {
  throw Error(ErrorKind::numerical, std::move(code), message);
}

}  // namespace scalebench
