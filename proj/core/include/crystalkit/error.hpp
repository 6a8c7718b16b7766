#pragma once

#include <stdexcept>
#include <string>

namespace crystalkit {

// Machine-readable failure categories. PARSE/FAMILY_MISMATCH and friends map
// to CLI exit code 2 (bad input); certificate failures are reported as
// violations (exit 1), not exceptions.
enum class ErrorCode {
  Parse,
  FamilyMismatch,
  Disjoint,
  NotEquivalent,
  NotIdempotent,
  NonKernel,
  NonAbelianKernel,
  Divergent,
  BoundExceeded,
  Undecided,
  Invalid,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace crystalkit
