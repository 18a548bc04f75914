#pragma once

#include <stdexcept>
#include <string>

namespace meshgnn {

// Base of every error raised by the library. Each subclass maps to one
// failure family so callers (the CLI in particular) can choose exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix or layer dimensions disagree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A configuration or hyperparameter value is outside its allowed domain.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed mesh or model document.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Unknown field or key.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Non-finite loss or gradient during optimization.
class TrainingError : public Error {
 public:
  using Error::Error;
};

// A matrix operation produced NaN or Inf.
class NumericError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace meshgnn
