#pragma once

#include <stdexcept>
#include <string>

namespace packcert {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// geom
class DegenerateInput : public Error {
public:
  using Error::Error;
};

// packing
class ContainerExceedsGeneration : public Error {
public:
  using Error::Error;
};

class SchemaError : public Error {
public:
  using Error::Error;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

// voronoi
class BoundaryVertex : public Error {
public:
  using Error::Error;
};

class ContainmentViolation : public Error {
public:
  using Error::Error;
};

// score
class NoSignChange : public Error {
public:
  using Error::Error;
};

} // namespace packcert
