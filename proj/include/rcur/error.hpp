#pragma once

#include <stdexcept>
#include <string>

namespace rcur {

enum class ErrorCode {
  invalid_argument,
  out_of_range,
  non_finite,
  rank_deficient,
  rank_deficient_core,
  insufficient_samples,
  degenerate,
  io,
  parse,
};

// Every failure raised by the library carries one of the codes above so the
// C API can map it onto a status value without string matching.
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

}  // namespace rcur
