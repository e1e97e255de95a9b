#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace benford {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text does not match the numeric-token grammar.
class MalformedToken : public Error {
 public:
  using Error::Error;
};

/// The value is exactly zero, so it has no significant digit.
class ZeroValue : public Error {
 public:
  ZeroValue() : Error("value is zero: no significant digit exists") {}
};

/// An argument lies outside the supported mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A statistic was requested on a census with no observations.
class EmptyCensus : public Error {
 public:
  EmptyCensus() : Error("census is empty: sample size is 0") {}
};

/// A noise distribution cannot drive the requested process.
class InvalidNoise : public Error {
 public:
  using Error::Error;
};

/// Input bytes are not valid UTF-8.
class EncodingError : public Error {
 public:
  EncodingError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A delimited table is structurally broken (e.g. ragged rows).
class FormatError : public Error {
 public:
  FormatError(std::size_t row, const std::string& what)
      : Error("row " + std::to_string(row) + ": " + what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// A requested table column is not present in the header.
class MissingColumn : public Error {
 public:
  explicit MissingColumn(const std::string& name)
      : Error("column not found: " + name) {}
};

}  // namespace benford
