#pragma once

#include <stdexcept>
#include <string>

namespace sirdx {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad caller input: empty data, mismatched shapes, invalid counts or
/// fractions. The CLI maps these to exit code 1.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A state or loss became NaN/Inf (step size too large, diverged training).
class NonFiniteError : public Error {
public:
    using Error::Error;
};

/// A closed-form result does not exist for the given inputs.
class NotApplicableError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// Output variance too small for a variance-based estimate.
class ZeroVarianceError : public Error {
public:
    using Error::Error;
};

/// Classifier training requires both classes in the label vector.
class SingleClassError : public Error {
public:
    using Error::Error;
};

} // namespace sirdx
