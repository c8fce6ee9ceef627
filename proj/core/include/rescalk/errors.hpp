#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rescalk {

/// Base class of everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: unreadable files, invalid flags/configs. CLI exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Numerical or degenerate-data failures. CLI exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

/// Requested latent dimension outside [1, n].
class InvalidRankError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Malformed line in a tensor/CSV file; carries the 1-based line number.
class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : InputError("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Coordinate outside the declared dims.
class BoundsError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Value outside the tensor's domain (negative, non-finite).
class DomainError : public ParseError {
 public:
  using ParseError::ParseError;
};

class ShapeError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Input with no usable signal (zero tensor, zero-norm reconstruction).
class DegenerateInputError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A factor column collapsed to zero; carries the offending column.
class DegenerateFactorError : public NumericError {
 public:
  DegenerateFactorError(const std::string& msg, std::size_t column)
      : NumericError(msg + " (column " + std::to_string(column) + ")"),
        column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

class DegenerateVectorError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Synthetic generator could not reach the requested rank.
class GenerationError : public NumericError {
 public:
  using NumericError::NumericError;
};

class InternalError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace rescalk
