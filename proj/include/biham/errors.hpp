#pragma once

#include <stdexcept>
#include <string>

namespace biham {

/// Coarse failure categories; the C API maps these 1:1 onto status codes.
enum class ErrorKind {
  invalid_argument,  // caller broke a precondition (shape, definiteness, ...)
  domain,            // input outside the mathematical domain (singular locus, a <= |z|, ...)
  numeric,           // an iteration failed to converge / conditioning gate tripped
  parse              // malformed JSON or flag payload
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace biham
