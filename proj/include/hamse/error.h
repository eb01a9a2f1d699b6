#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hamse {

/// Base of every error raised by the library. Input errors (bad files, bad
/// arguments) derive from InputError so callers can map them to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

/// A value outside the domain of an operation (e.g. asking a rest for its pitch).
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class RangeError : public InputError {
 public:
  using InputError::InputError;
};

class UnsupportedFormat : public InputError {
 public:
  using InputError::InputError;
};

/// Text parse failure. `line` is 1-based; 0 when not applicable.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InputError(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Binary parse failure at a byte offset.
class BinaryParseError : public InputError {
 public:
  BinaryParseError(const std::string& what, std::size_t offset)
      : InputError("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace hamse
