#pragma once

#include <stdexcept>
#include <string>

namespace lexidiv {

// Base for all toolkit errors. The CLI maps IoError to exit code 3 and every
// other Error to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file named directly by the caller could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// A file referenced from a manifest row is missing or unreadable.
class LoadError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class MeasurementError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

class ScalingError : public Error {
 public:
  using Error::Error;
};

class SplitError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace lexidiv
