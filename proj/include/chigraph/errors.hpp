#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chigraph {

// Broad classes of failure. The CLI maps these onto exit codes.
enum class ErrorKind {
  InvalidArgument,
  InfeasibleSampling,
  DegenerateGeometry,
  Structural,
  MalformedRecord,
  InvariantViolation,
  IndexMismatch,
  UndefinedNormalization,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& message)
      : Error(ErrorKind::InvalidArgument, message) {}
};

class InfeasibleSamplingError : public Error {
 public:
  explicit InfeasibleSamplingError(const std::string& message)
      : Error(ErrorKind::InfeasibleSampling, message) {}
};

class DegenerateGeometryError : public Error {
 public:
  explicit DegenerateGeometryError(const std::string& message)
      : Error(ErrorKind::DegenerateGeometry, message) {}
};

class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& message)
      : Error(ErrorKind::Structural, message) {}
};

// Raised while reading line-oriented files; line numbers are 1-based.
class MalformedRecordError : public Error {
 public:
  MalformedRecordError(std::size_t line, const std::string& message)
      : Error(ErrorKind::MalformedRecord,
              "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class InvariantViolationError : public Error {
 public:
  InvariantViolationError(std::size_t sample_index, const std::string& message)
      : Error(ErrorKind::InvariantViolation,
              "sample " + std::to_string(sample_index) + ": " + message),
        sample_index_(sample_index) {}

  std::size_t sample_index() const noexcept { return sample_index_; }

 private:
  std::size_t sample_index_;
};

class IndexMismatchError : public Error {
 public:
  explicit IndexMismatchError(const std::string& message)
      : Error(ErrorKind::IndexMismatch, message) {}
};

class UndefinedNormalizationError : public Error {
 public:
  explicit UndefinedNormalizationError(const std::string& message)
      : Error(ErrorKind::UndefinedNormalization, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(ErrorKind::Io, message) {}
};

}  // namespace chigraph
