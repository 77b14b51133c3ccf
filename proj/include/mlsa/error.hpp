#pragma once

#include <stdexcept>
#include <string>

namespace mlsa {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid invocation or inconsistent configuration (CLI exit code 1).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unusable input data (CLI exit code 2).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument to a numeric routine (empty input, length mismatch, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A parse failure carrying the file and 1-based line it happened on.
class ParseError : public DataError {
 public:
  ParseError(std::string file, std::size_t line, const std::string& what)
      : DataError(file + ":" + std::to_string(line) + ": " + what),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

}  // namespace mlsa
