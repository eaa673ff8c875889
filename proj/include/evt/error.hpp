#pragma once

#include <stdexcept>
#include <string>

namespace evt {

// Coarse classification used for CLI exit codes.
enum class ErrorCategory { Parse, Domain, Numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorCategory::Parse, what) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCategory::Domain, what) {}
};

/// Two norming pairs that refer to different sample sizes.
class MismatchError : public Error {
 public:
  explicit MismatchError(const std::string& what) : Error(ErrorCategory::Domain, what) {}
};

class QuadratureError : public Error {
 public:
  explicit QuadratureError(const std::string& what) : Error(ErrorCategory::Numerical, what) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error(ErrorCategory::Numerical, what) {}
};

class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& what) : Error(ErrorCategory::Numerical, what) {}
};

class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& what) : Error(ErrorCategory::Numerical, what) {}
};

}  // namespace evt
