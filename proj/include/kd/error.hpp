#pragma once

#include <stdexcept>
#include <string>

namespace kd {

enum class ErrorKind {
  BadInput,      // malformed text, invalid diagram, rejected argument
  CapExceeded,   // enumeration would exceed the configured cap
  Precondition,  // operation called outside its domain (e.g. multi-vertex dessin)
  Internal,      // a self-check failed; indicates a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace kd
