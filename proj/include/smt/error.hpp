#pragma once

#include <stdexcept>
#include <string>

namespace smt {

// Base of every error raised by the library. Catch this to handle all of them.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands of incompatible shape (vector lengths, matrix widths).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A brute-force or enumeration routine was asked to exceed its size limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A numeric parameter lies outside the documented range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Malformed input data: files, duplicate edges, zero weights.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The outcome string fed to the group-testing replay is not consistent with
// any defect vector of weight at most d.
class InfeasiblePrefixError : public Error {
 public:
  using Error::Error;
};

// A disjunct-matrix syndrome failed to decode to a consistent vector.
class DecodeError : public Error {
 public:
  using Error::Error;
};

// A reconstruction run could not finish: degree overflow, a decode failure at
// a leaf, or a violated non-cancellation assumption.
class AlgorithmError : public Error {
 public:
  using Error::Error;
};

// The spectrum has a coefficient of degree above the bound d the run was
// given, detected when the binary-splitting replay becomes infeasible.
class DegreeOverflowError : public AlgorithmError {
 public:
  using AlgorithmError::AlgorithmError;
};

}  // namespace smt
