#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liftgeo {

// Base of every exception thrown by the library. The C API maps each subclass
// to one status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Expression grammar error; `offset` is the byte offset into the parsed text.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : Error("parse error at byte " + std::to_string(offset) + ": " + message),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Metric definition file error; `line` is 1-based.
class MetricFileError : public Error {
 public:
  MetricFileError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

  // Same error with the file name in front of the message.
  MetricFileError in_file(const std::string& path) const { return MetricFileError(line_, path + ": " + what(), 0); }

 private:
  MetricFileError(std::size_t line, const std::string& full, int) : Error(full), line_(line) {}
  std::size_t line_;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("symbolic division by zero") {}
};

class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

// A zero test could neither cancel symbolically nor find a numeric witness.
class Undecided : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  enum class Kind { MissingBinding, SingularDenominator, Domain };
  EvalError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace liftgeo
