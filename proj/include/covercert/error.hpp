#pragma once

#include <stdexcept>
#include <string>

namespace covercert {

// Base of every error thrown by the library. The C API maps each subclass
// onto one status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what), line_(0) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Input outside the mathematical domain of an operation (modulus < 1,
// modulus 1 passed to the distortion pipeline, delta outside [0, 1/2], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidModulus : public DomainError {
 public:
  using DomainError::DomainError;
};

// An enumeration would exceed a configured limit.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant. Never expected to surface.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace covercert
