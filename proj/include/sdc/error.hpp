// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace sdc {

// Broad failure classes. The C API and the CLI map these onto status and
// exit codes, the HTTP service onto response statuses.
enum class ErrorKind {
  kUsage,         // malformed request: bad arguments, unknown names, ranges
  kData,          // input data or documents that cannot be parsed/validated
  kPrecondition,  // well-formed input an operator refuses to act on
  kUndefined,     // metric whose value is mathematically undefined
  kNotFound,      // unknown dataset or session
  kConflict,      // request not valid in the current state (empty undo stack)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace sdc
