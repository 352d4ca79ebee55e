#pragma once

#include <stdexcept>
#include <string>

namespace polyverse {

enum class ErrorKind {
  shape,          // domains, codomains or indices do not line up
  commutativity,  // a diagram that must commute does not
  pullback,       // a square that must be a pullback is not
  cap_exceeded,   // an enumeration would exceed the configured cap
  not_cartesian,  // an operation restricted to cartesian 2-cells got another
  triangle,       // an adjustment is not a map over B
  naturality,     // an internal transformation is not natural
  invalid,        // structure fails its own validation (universe, category...)
  parse,          // malformed interchange input
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::shape: return "shape";
    case ErrorKind::commutativity: return "commutativity";
    case ErrorKind::pullback: return "pullback";
    case ErrorKind::cap_exceeded: return "cap_exceeded";
    case ErrorKind::not_cartesian: return "not_cartesian";
    case ErrorKind::triangle: return "triangle";
    case ErrorKind::naturality: return "naturality";
    case ErrorKind::invalid: return "invalid";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace polyverse
