#pragma once

#include <stdexcept>
#include <string>

namespace ompath {

enum class ErrorCode {
  invalid_argument = 1,
  unsupported = 2,
  domain = 3,
  infeasible = 4,
  internal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace ompath
