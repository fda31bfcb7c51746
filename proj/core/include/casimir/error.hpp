#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (negative temperature, empty grid, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A response function was evaluated exactly on one of its poles or excluded points.
class SingularFrequency : public Error {
 public:
  using Error::Error;
};

/// The argument-principle contour passes through (or too close to) a zero or pole.
class RootOnContour : public Error {
 public:
  using Error::Error;
};

/// Phase accumulation did not settle to a stable integer after refinement.
class NonIntegerWinding : public Error {
 public:
  using Error::Error;
};

/// An iterative search exhausted its cell or iteration budget.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach its tolerance.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// Both Bloch multipliers of a periodic stack are unimodular; no decaying branch exists.
class BlochAmbiguity : public Error {
 public:
  using Error::Error;
};

/// Continuation lost the branch it was tracking.
class LostBranch : public Error {
 public:
  using Error::Error;
};

/// The root set handed to a physics routine does not match the expected structure.
class RegimeViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace casimir
