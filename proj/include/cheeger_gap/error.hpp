#pragma once

#include <stdexcept>
#include <string>

namespace cheeger_gap {

enum class ErrorKind {
  invalid_model,
  size_limit,
  parse,
  validation,
  convergence,
  positivity,
  stale_ground_state,
  degenerate_cut,
  empty_family,
  degenerate_reduction,
  degeneracy,
  support,
  overflow,
  internal,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so the CLI can map it
/// onto an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cheeger_gap
