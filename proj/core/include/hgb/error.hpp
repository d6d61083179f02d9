#pragma once

#include <stdexcept>
#include <string>

namespace hgb {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was not met by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (for example, invalid JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that does not follow the dataset schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A decoded graph breaks one of the hybrid-graph invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace hgb
