#pragma once

#include <stdexcept>
#include <string>

namespace gframe {

// Malformed or mismatched input: shapes, descriptors, file contents.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Mathematically invalid argument, e.g. inverting a singular element.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Well-formed input that the requested computation does not support,
// such as scalar bounds for a system whose controls do not commute.
class UnsupportedConfiguration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numeric precondition of a check is violated (e.g. alpha + beta/nu^2 >= 1).
class PreconditionError : public InputError {
public:
    using InputError::InputError;
};

}  // namespace gframe
