#pragma once

#include <stdexcept>
#include <string>

namespace ardt {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unusable input data (files, datasets, label columns).
class DataError : public Error {
 public:
  using Error::Error;
};

// A precondition on an argument or configuration value was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A serialized model could not be loaded. The message names the field.
class ModelFormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace ardt
