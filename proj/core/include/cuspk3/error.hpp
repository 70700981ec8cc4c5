#pragma once

#include <stdexcept>
#include <string>

namespace cuspk3 {

// Base class for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside an operation's documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inputs that are individually fine but contradict each other
// (e.g. connection indices whose product is not an even power of 2).
class InconsistentInput : public Error {
 public:
  using Error::Error;
};

// An internal cross-check failed.  Seeing this means a bug, not bad input.
class InternalCheckFailed : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cuspk3
