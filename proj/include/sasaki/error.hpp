#pragma once

#include <stdexcept>
#include <string>

namespace sasaki {

enum class ErrorKind { invalid_argument, numerical };

/// Base of every exception thrown by the library. The kind decides the CLI
/// exit code (usage errors map to 2, numerical failures to 1).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::invalid_argument, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::numerical, what) {}
};

}  // namespace sasaki
