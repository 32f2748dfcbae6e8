#pragma once

#include <stdexcept>
#include <string>

namespace wittkit {

// Error kinds line up with the CLI exit codes and the C API status codes.
enum class ErrorKind {
  Validation = 1,  // bad mathematical data (axiom violations, class mismatches, ...)
  Parse = 2,       // malformed files or text
  Internal = 3,    // a law the theory guarantees failed to hold; always a bug
  Argument = 4,    // precondition violated by the caller
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }
[[noreturn]] inline void fail_validation(const std::string& m) { fail(ErrorKind::Validation, m); }
[[noreturn]] inline void fail_parse(const std::string& m) { fail(ErrorKind::Parse, m); }
[[noreturn]] inline void fail_internal(const std::string& m) { fail(ErrorKind::Internal, m); }
[[noreturn]] inline void fail_argument(const std::string& m) { fail(ErrorKind::Argument, m); }

}  // namespace wittkit
