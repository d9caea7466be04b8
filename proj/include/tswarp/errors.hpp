#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tswarp {

/// Raised when a signal has (numerically) zero total variation, so its
/// derivative density cannot be normalized.
class ZeroVariation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A discrete warping path that violates the step or endpoint rules.
class AdmissibilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for everything that can go wrong while reading or writing datasets.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : DataError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class RaggedRows : public DataError {
 public:
  using DataError::DataError;
};

class EmptyFile : public DataError {
 public:
  using DataError::DataError;
};

class EmptyDataset : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace tswarp
