#pragma once

#include <stdexcept>
#include <string>

namespace mixpow {

// Failure categories shared by every module. The C API maps each kind to a
// status code and the CLI maps status codes to process exit codes.
enum class ErrorKind {
  InvalidArgument,
  EmptyInterval,
  DegenerateArcs,
  TableTooSmall,
  InstanceTooLarge,
  ResolutionError,
  ConsistencyFailure,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace mixpow
