#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

enum class ErrorCode {
  InvalidArgument = 1,
  BudgetExceeded = 2,
  OutOfDomain = 3,
  Parse = 4,
};

// All recoverable failures in the library are reported with this type; the C
// API maps `code()` onto dl_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::InvalidArgument, what);
}

}  // namespace dlab
