#pragma once

#include <stdexcept>
#include <string>

namespace bdens {

// Base class of every error thrown by the library. The CLI maps all of them
// to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A polynomial or matrix references a moment beyond the available truncation.
class MissingMoment : public Error {
 public:
  using Error::Error;
};

// The requested level needs more moments than supplied. max_level() is the
// largest level the inputs support (-1 when none is).
class DegreeShortfall : public Error {
 public:
  DegreeShortfall(const std::string& what, int max_level)
      : Error(what), max_level_(max_level) {}
  int max_level() const noexcept { return max_level_; }

 private:
  int max_level_;
};

class HypothesisNotAsserted : public Error {
 public:
  using Error::Error;
};

class IncompleteShell : public Error {
 public:
  using Error::Error;
};

class DuplicateIndex : public Error {
 public:
  using Error::Error;
};

class MalformedFile : public Error {
 public:
  using Error::Error;
};

// An even moment that must be positive is not (z cannot be a moment
// sequence of a measure with infinite support).
class NonpositiveMoment : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace bdens
