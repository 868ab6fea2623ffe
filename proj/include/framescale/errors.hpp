#pragma once

#include <stdexcept>
#include <string>

namespace framescale {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes disagree (matrix dimension, vector length, weight count).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Input violates a domain invariant (zero frame vector, invalid scaling, bad tolerance).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Exhaustive subset search refused because n exceeds the configured guard.
class ExponentialGuardError : public Error {
public:
    using Error::Error;
};

/// The unique-scaling solver was called on a frame whose outer products are dependent.
class RoutingError : public Error {
public:
    using Error::Error;
};

/// A scaling could not be written as a convex combination of polytope vertices.
class DecompositionError : public Error {
public:
    using Error::Error;
};

}  // namespace framescale
