#pragma once

#include <stdexcept>
#include <string>

namespace miseal {

/// Invalid or inconsistent input data (maps to CLI exit code 2).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation failed numerically (maps to CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryMismatch : public DataError {
 public:
  using DataError::DataError;
};

class SingularityInPatch : public DataError {
 public:
  using DataError::DataError;
};

class EmptyPatch : public DataError {
 public:
  using DataError::DataError;
};

class OutOfMask : public DataError {
 public:
  using DataError::DataError;
};

class TooFewPoints : public DataError {
 public:
  using DataError::DataError;
};

class ParseError : public DataError {
 public:
  using DataError::DataError;
};

class DegenerateTrend : public DataError {
 public:
  using DataError::DataError;
};

class DegenerateMarginal : public DataError {
 public:
  using DataError::DataError;
};

class Separation : public DataError {
 public:
  using DataError::DataError;
};

class NonConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class AuxSamplerFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ScorerFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace miseal
