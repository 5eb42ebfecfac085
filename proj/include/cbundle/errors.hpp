#pragma once

#include <stdexcept>
#include <string>

namespace cbundle {

/// Base of every error raised by the library. The CLI maps these onto exit
/// codes: InadmissibleSurface -> 3, everything else derived from Error -> 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// Odd D^2 + K.D: the adjunction formula gives a half-integral genus.
class NonIntegralGenusError : public Error {
 public:
  using Error::Error;
};

// (4/d)K is not an integral class.
class NonIntegralClassError : public Error {
 public:
  using Error::Error;
};

class DegenerateConicError : public Error {
 public:
  using Error::Error;
};

// A double cover z^2 = 0 (the zero branch form).
class NonReducedError : public Error {
 public:
  using Error::Error;
};

class NoSmoothStartError : public Error {
 public:
  using Error::Error;
};

class VacuousInputError : public Error {
 public:
  using Error::Error;
};

/// Degenerate fibre hit where a smooth one was required. Carries the
/// discriminant form of the fibration (serialized) as a witness.
class DegenerateFibreError : public Error {
 public:
  DegenerateFibreError(const std::string& what, std::string witness)
      : Error(what), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

class InadmissibleSurfaceError : public Error {
 public:
  InadmissibleSurfaceError(const std::string& what, std::string witness)
      : Error(what), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

}  // namespace cbundle
