#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eqsing {

// Every failure surfaced by the library carries a stable short code
// (e.g. "DanglingEdge") so the CLI and tests can match on it.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& m) : Error("DimensionError", m) {}
};

struct OverflowError : Error {
  explicit OverflowError(const std::string& m) : Error("Overflow", m) {}
};

struct DependentBasis : Error {
  explicit DependentBasis(const std::string& m) : Error("DependentBasis", m) {}
};

// Diagram and polynomial file diagnostics; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::string code, std::size_t line, std::size_t column, const std::string& message)
      : Error(std::move(code), format(line, column, message)), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(std::size_t line, std::size_t column, const std::string& m) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + m;
  }
  std::size_t line_;
  std::size_t column_;
};

struct ActionError : Error {
  using Error::Error;
};

struct MonodromyError : Error {
  using Error::Error;
};

struct LocalAlgebraError : Error {
  using Error::Error;
};

struct CatalogError : Error {
  using Error::Error;
};

}  // namespace eqsing
