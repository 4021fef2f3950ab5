#pragma once

#include <stdexcept>
#include <string>

namespace spinwire {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An input violates a documented invariant; the message names the field.
struct InvalidParams : Error {
  using Error::Error;
};

/// Bad command line or config file (CLI exit code 1).
struct UsageError : Error {
  using Error::Error;
};

struct ZeroCoupling : Error {
  ZeroCoupling() : Error("coupling Gamma = (J + iD)/2 is zero: omega = Gamma*/Gamma is undefined") {}
};

struct NonUniformField : Error {
  NonUniformField() : Error("operation requires a uniform field profile") {}
};

struct ThetaOutOfRange : Error {
  ThetaOutOfRange() : Error("theta must lie in [-pi, pi]") {}
};

struct ZeroDenominator : Error {
  ZeroDenominator() : Error("normalization denominator vanishes (all sin(n*theta) terms are zero)") {}
};

struct ZeroField : Error {
  ZeroField() : Error("operation requires a nonzero uniform field B") {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct TooLarge : Error {
  using Error::Error;
};

struct QuadratureNonConvergence : Error {
  using Error::Error;
};

struct ConvergenceFailure : Error {
  using Error::Error;
};

}  // namespace spinwire
