#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dcmon {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Time point or interval outside a trace horizon.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Unknown observable, out-of-domain value or malformed trace layout.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Term/formula evaluation failure (unbound variable, division by zero, ...).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Syntax or declaration error in the formula language. Carries a 1-based
/// source position; line 0 means "no position".
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(line == 0 ? message
                        : std::to_string(line) + ":" + std::to_string(column) +
                              ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Operation invoked in the wrong cell state.
class StateError : public Error {
 public:
  using Error::Error;
};

/// Malformed data instance, batch or input record.
class InputError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Trace recording/measurement failure, including scheduler overflow.
class InstrumentationError : public Error {
 public:
  using Error::Error;
};

/// Trace without a complete lifespan handed to the monitor.
class InsufficientTraceError : public Error {
 public:
  using Error::Error;
};

class MergeError : public Error {
 public:
  using Error::Error;
};

}  // namespace dcmon
