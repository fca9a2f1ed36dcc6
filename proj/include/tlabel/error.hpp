#pragma once

#include <stdexcept>
#include <string>

namespace tlabel {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input: bad files, violated preconditions,
/// hypotheses that do not hold for the instance.
class InputError : public Error {
public:
    using Error::Error;
};

/// A guarantee that should hold by construction was broken. Seeing one of
/// these means a bug in the library or a counterexample to the Δ+2 bound the
/// labeler relies on.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// No reducible configuration was found in a graph that must contain one.
class IrreducibleError : public InvariantError {
public:
    using InvariantError::InvariantError;
};

/// An exhaustive search ran out of its node budget before reaching a verdict.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

} // namespace tlabel
