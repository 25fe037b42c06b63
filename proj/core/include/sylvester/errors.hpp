#pragma once

#include <stdexcept>
#include <string>

namespace sylvester {

/// A computational precondition failed (bad abscissas, Compa violation, ...).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A polynomial was evaluated without binding all of its variables.
class MissingVariableError : public PreconditionError {
 public:
  explicit MissingVariableError(const std::string& what) : PreconditionError(what) {}
};

/// The requested body form or operation combination is not implemented.
class UnsupportedError : public std::logic_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace sylvester
