#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypconv {

enum class ErrorCode {
  Pole,
  NoConvergence,
  CPole,
  TermCapExceeded,
  NotConvergentAtOne,
  CaseNotApplicable,
  DivisionByZero,
  CFNotConverged,
  PreconditionViolated,
  DerivativeZero,
  LimitNotFinite,
  Inconclusive,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Base class for every failure raised by the library.  The code lets callers
/// (regime dispatch, the CLI) react to a failure class without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class PoleError : public Error {
 public:
  explicit PoleError(const std::string& what) : Error(ErrorCode::Pole, what) {}
};

}  // namespace hypconv
