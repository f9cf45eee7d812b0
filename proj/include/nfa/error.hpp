#pragma once

#include <stdexcept>
#include <string>

namespace nfa {

// Error categories mirrored by the C API status codes.
enum class Status : int {
  ok = 0,
  invalid_argument = 1,
  io_error = 2,
  parse_error = 3,
  numeric_error = 4,
  internal_error = 5,
};

class Error : public std::runtime_error {
 public:
  Error(Status status, const std::string& message)
      : std::runtime_error(message), status_(status) {}

  Status status() const { return status_; }

 private:
  Status status_;
};

[[noreturn]] inline void fail(Status status, const std::string& message) {
  throw Error(status, message);
}

}  // namespace nfa
