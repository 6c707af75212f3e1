#pragma once

#include <stdexcept>
#include <string>

namespace rotoflex {

enum class ErrorKind {
  invalid_input, // malformed arguments, schema violations, dimension mismatches
  numeric,       // lossless resonance, null signals, failed cross-checks
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_invalid(const std::string& message) {
  throw Error(ErrorKind::invalid_input, message);
}

[[noreturn]] inline void throw_numeric(const std::string& message) {
  throw Error(ErrorKind::numeric, message);
}

} // namespace rotoflex
