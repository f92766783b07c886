#pragma once

#include <stdexcept>
#include <string>

namespace flep {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Invalid or degenerate key material.
class KeyError : public Error {
 public:
  using Error::Error;
};

// Shape or size preconditions violated.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace flep
