#include "mixpow/errors.hpp"

namespace mixpow {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::EmptyInterval: return "empty-interval";
    case ErrorKind::DegenerateArcs: return "degenerate-arcs";
    case ErrorKind::TableTooSmall: return "table-too-small";
    case ErrorKind::InstanceTooLarge: return "instance-too-large";
    case ErrorKind::ResolutionError: return "resolution-error";
    case ErrorKind::ConsistencyFailure: return "consistency-failure";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace mixpow
