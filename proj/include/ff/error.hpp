#pragma once

#include <stdexcept>
#include <string>

namespace ff {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed documents, invalid parameters, violated preconditions on inputs.
class InputError : public Error {
public:
    using Error::Error;
};

/// A configured size bound (element cap, lattice cap, orbit bound) was exceeded.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// An operation was called on arguments outside its domain (e.g. a subsystem
/// requested for a subgroup that is not fully normalized).
class PreconditionError : public Error {
public:
    using Error::Error;
};

} // namespace ff
