#pragma once

#include <stdexcept>
#include <string>

namespace sewi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Array lengths or grids that do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Evaluation point outside the periodic box.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameters, unknown catalogue keys, malformed config files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sewi
