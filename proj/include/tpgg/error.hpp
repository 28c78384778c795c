#pragma once

#include <stdexcept>
#include <string>

namespace tpgg {

/// Failure categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  InvalidArgument = 1,
  InvalidSize,
  OutOfRange,
  Io,
  Parse,
  UnknownKey,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tpgg
