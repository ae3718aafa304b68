#pragma once

#include <stdexcept>
#include <string>

namespace pca {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSiteError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class InfeasiblePlanError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine produced a result outside its validity envelope
/// (e.g. a step product that is not unitary).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class InvalidProfileError : public Error {
 public:
  using Error::Error;
};

}  // namespace pca
