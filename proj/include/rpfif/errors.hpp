#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rpfif {

/// Coarse failure category; the CLI maps it onto its exit codes.
enum class ErrorKind {
    validation,  // bad input, violated precondition
    numerical,   // non-convergence, failed verification
    io,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

/// A triple whose third coordinate is (numerically) zero lies on the removed hyperplane.
struct HyperplanePointError : ValidationError {
    using ValidationError::ValidationError;
};

struct DegenerateIntervalError : ValidationError {
    using ValidationError::ValidationError;
};

struct OrderingError : ValidationError {
    using ValidationError::ValidationError;
};

struct GridMismatchError : ValidationError {
    using ValidationError::ValidationError;
};

struct OutsideIntervalError : ValidationError {
    using ValidationError::ValidationError;
};

struct SizeCapError : ValidationError {
    using ValidationError::ValidationError;
};

/// Config problems carry either a source position (syntax) or a field path (semantics).
struct ConfigError : ValidationError {
    ConfigError(const std::string& what, std::string field_path, std::size_t line = 0, std::size_t column = 0)
        : ValidationError(what), field(std::move(field_path)), line(line), column(column) {}
    std::string field;
    std::size_t line;
    std::size_t column;
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace rpfif
