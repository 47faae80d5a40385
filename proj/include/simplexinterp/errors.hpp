#pragma once

#include <stdexcept>
#include <string>

namespace simplexinterp {

// Precondition violations on user-supplied arguments.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Lattice index arithmetic that leaves the node set of the reference simplex.
class OutOfLattice : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// File access and parse failures; the message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Base for failures of a numerical procedure on otherwise valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularGeometry : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IllConditionedElement : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InsufficientProbeSpace : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace simplexinterp
