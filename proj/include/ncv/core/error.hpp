#pragma once

#include <stdexcept>
#include <string>

namespace ncv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unusable input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration, registry, recipe or hyperparameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A learner could not be fitted (single class, singular covariance, ...).
class FitError : public Error {
 public:
  using Error::Error;
};

// An evaluation protocol could not be carried out.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace ncv
