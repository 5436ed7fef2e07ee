#pragma once

#include <stdexcept>
#include <string>

namespace cuspmag {

/// Invalid configuration document. Carries either a source position (syntax
/// errors) or a dotted field path (semantic errors).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::string field_path, int line = 0, int column = 0)
      : std::runtime_error(format(message, field_path, line, column)),
        field_path_(std::move(field_path)),
        line_(line),
        column_(column) {}

  const std::string& field_path() const { return field_path_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& message, const std::string& path, int line, int column) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
    if (!path.empty()) out += path + ": ";
    return out + message;
  }

  std::string field_path_;
  int line_;
  int column_;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative numerics failed to reach the requested tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cuspmag
