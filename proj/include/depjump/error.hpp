#pragma once

#include <stdexcept>
#include <string>

namespace depjump {

enum class ErrorKind {
  kInvalidArgument,
  kSizeLimitExceeded,
  kGuardViolation,
  kHypothesisViolation,
  kParse,
};

/// Base error for every contract violation reported by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) throw Error(kind, what);
}

inline void require(bool ok, ErrorKind kind, const char* what) {
  if (!ok) throw Error(kind, what);
}

}  // namespace depjump
