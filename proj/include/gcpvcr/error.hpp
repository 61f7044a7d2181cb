#pragma once

#include <stdexcept>
#include <string>

namespace gcpvcr {

enum class ErrorKind {
  invalid_argument,
  contract,
  size,
  io,
  parse,
  constraint,
};

// Single exception type for the library; the C API maps kind() onto status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::contract, what);
}

}  // namespace gcpvcr
