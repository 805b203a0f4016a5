#pragma once

#include <stdexcept>
#include <string>

namespace blurfisher {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Grid dimensions of two operands do not agree.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed, or a file is malformed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Regression could not be carried out on the supplied data.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Blur estimation had nothing usable to work with.
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace blurfisher
