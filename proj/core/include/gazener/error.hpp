#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gazener {

// Base for every error the library raises on bad input or numeric failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed external data. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), source_(source), line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Well-formed input that violates a contract (bad config, inconsistent references).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Training diverged or produced a non-finite value.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace gazener
