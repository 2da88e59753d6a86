#pragma once

#include <stdexcept>
#include <string>

namespace indefsl {

// Maps onto the CLI exit codes.
enum class ErrorKind { config = 2, numerical = 3, invariant = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what) : Error(ErrorKind::invariant, what) {}
};

/// Raised when adaptive step control cannot make progress.
class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double x) : NumericalError(what), x_(x) {}
  [[nodiscard]] double x() const noexcept { return x_; }

 private:
  double x_;
};

}  // namespace indefsl
