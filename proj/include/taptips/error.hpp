#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace taptips {

// Root of every exception thrown by the library. Callers that only need to
// distinguish "bad input" from "environment failure" can catch Error vs IoError.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be read or written. The CLI maps this to exit status 2.
class IoError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class GuidebookError : public Error {
 public:
  enum class Kind {
    syntax,
    unknown_key,
    missing_field,
    invalid_value,
    duplicate_id,
    degenerate_shape,
    out_of_bounds,
    unknown_action,
    empty,
  };

  GuidebookError(Kind kind, std::string message, std::size_t line = 0, std::size_t column = 0)
      : Error(std::move(message)), kind_(kind), line_(line), column_(column) {}

  Kind kind() const noexcept { return kind_; }
  // 1-based; zero when the error is not tied to a source position.
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

class EngineError : public Error {
 public:
  enum class Kind { unknown_wall, out_of_order, missing_position, missing_wall, invalid_config, negative_elapsed };

  EngineError(Kind kind, std::string message) : Error(std::move(message)), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class StyleError : public Error {
 public:
  enum class Kind { empty_samples, invalid_palette, infeasible_palette };

  StyleError(Kind kind, std::string message) : Error(std::move(message)), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class TraceError : public Error {
 public:
  enum class Kind { malformed, out_of_order, not_replayable };

  TraceError(Kind kind, std::string message, std::size_t line = 0)
      : Error(std::move(message)), kind_(kind), line_(line) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

}  // namespace taptips
