#pragma once

#include <stdexcept>
#include <string>

namespace match1d {

enum class error_kind {
  argument,    // out-of-range or malformed call parameters
  parse,       // unreadable text input
  input,       // structurally invalid instance data
  validation,  // cost function violates its construction invariants
  size,        // size cap exceeded
  internal,    // broken solver invariant
  io,          // file system failure
};

class error : public std::runtime_error {
 public:
  error(error_kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  error_kind kind() const noexcept { return kind_; }

 private:
  error_kind kind_;
};

[[noreturn]] inline void fail(error_kind kind, const std::string& message) {
  throw error(kind, message);
}

}  // namespace match1d
