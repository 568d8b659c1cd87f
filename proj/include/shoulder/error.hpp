#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shoulder {

enum class ErrorKind {
  Format,      // malformed bytes: wrong column count, non-numeric cell, bad key
  Validation,  // well-formed but violates an invariant (non-finite, rate mismatch, ...)
  Boundary,    // label window outside the stream it refers to
  TooShort,    // segment shorter than an operation requires
  Degenerate,  // signal or sample for which the quantity is undefined
  Cohort,      // group composition unusable for comparison
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Same kind, message prefixed with `context: `.
  Error with_context(std::string_view context) const {
    return Error(kind_, std::string(context) + ": " + what());
  }

 private:
  ErrorKind kind_;
};

}  // namespace shoulder
