#pragma once

#include <stdexcept>
#include <string>

namespace mcbound {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad shapes, negative counts,
/// unnormalized probabilities, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Inputs that are well-formed but physically inconsistent with the model
/// (e.g. a purity estimate far outside the admissible interval).
class PhysicsError : public Error {
 public:
  using Error::Error;
};

/// The Hermitian eigensolver did not converge.
class EigenSolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace mcbound
