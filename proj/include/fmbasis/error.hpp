#pragma once

#include <stdexcept>
#include <string>

namespace fmbasis {

enum class Errc {
  parse_error,       // malformed literal or expression
  invalid_argument,  // parameter constraint violated
  unsupported,       // outside the supported size/characteristic range
  mismatch,          // operands from different groups or fields
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace fmbasis
