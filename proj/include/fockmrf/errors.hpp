#pragma once

#include <stdexcept>
#include <string>

namespace fockmrf {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A (node, bin) index outside the declared layout.
struct IndexError : Error {
  using Error::Error;
};

// Malformed or invariant-violating model document.
struct ValidationError : Error {
  using Error::Error;
};

// Operation applied to a state in the wrong mode (e.g. a multi-occupancy
// state where exactly one sample per node is required).
struct ModeError : Error {
  using Error::Error;
};

// Well-formed model that cannot proceed (e.g. all-zero creation weights).
struct ModelError : Error {
  using Error::Error;
};

// A size guard was exceeded (state space or monomial count).
struct CapacityError : Error {
  using Error::Error;
};

// Kernel is reducible or periodic on its support.
struct ErgodicityError : Error {
  using Error::Error;
};

// Iteration cap reached without meeting tolerance.
struct ConvergenceError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace fockmrf
