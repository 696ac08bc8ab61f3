#pragma once

#include <stdexcept>
#include <string>

namespace causal {

/// Base exception for the library. `category()` is a short machine-readable
/// tag (e.g. "parse", "cyclic") used by the CLI for its "error:<category>:"
/// prefix.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& message)
      : std::runtime_error(message), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

/// Malformed input document (JSON syntax, schema, dangling names).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error("parse", message) {}
};

/// Index, size, or value outside the accepted domain.
class RangeError : public Error {
 public:
  explicit RangeError(const std::string& message) : Error("range", message) {}
};

/// A model that violates one of its structural invariants.
class InvalidModelError : public Error {
 public:
  explicit InvalidModelError(const std::string& message) : Error("invalid", message) {}
};

}  // namespace causal
