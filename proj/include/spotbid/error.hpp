#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spotbid {

/// Base class for every error caused by bad input data or arguments, as
/// opposed to a bug in the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based; 0 means "no line applies"
/// (e.g. invalid JSON document, zero records after filtering).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A PriceTrace invariant does not hold. `indices()` are 0-based point
/// indices implicated in the violation (one or two of them).
class ValidationError : public Error {
 public:
  ValidationError(std::vector<std::size_t> indices, const std::string& what)
      : Error(what), indices_(std::move(indices)) {}

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  std::vector<std::size_t> indices_;
};

/// Argument outside the domain of a model function: invalid band, gains
/// with the wrong sign, a bid on the band edge, an error outside the
/// proportional band, non-finite input.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace spotbid
