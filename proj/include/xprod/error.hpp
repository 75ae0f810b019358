#pragma once

#include <stdexcept>
#include <string>

namespace xprod {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (bad field string, wrong shape, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A construction needs a square root (or similar) the active field lacks.
class RequiresClosedField : public Error {
 public:
  using Error::Error;
};

}  // namespace xprod
