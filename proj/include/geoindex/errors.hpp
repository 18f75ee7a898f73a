#pragma once

#include <stdexcept>
#include <string>

namespace geoindex {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or invariant-violating input. The CLI maps these to exit status 2.
class InputError : public Error {
public:
    using Error::Error;
};

class DimensionError : public InputError {
public:
    using InputError::InputError;
};

class ValidationError : public InputError {
public:
    using InputError::InputError;
};

class PreconditionError : public InputError {
public:
    using InputError::InputError;
};

/// The requested operation is defined only for a narrower class of inputs
/// (bumpy configurations, descriptors without eigenvalue-1 blocks).
class UnsupportedError : public InputError {
public:
    using InputError::InputError;
};

/// A bounded search or enumeration range is too small for the request.
class RangeError : public InputError {
public:
    using InputError::InputError;
};

/// Interval evaluation could not decide a discontinuous function
/// (floor, ceiling, integrality). Exit status 3.
class PrecisionError : public Error {
public:
    using Error::Error;
};

/// A certificate violates one of its own defining invariants. Exit status 1.
class InvalidCertificateError : public Error {
public:
    using Error::Error;
};

/// Bounded jump search exhausted its range. Exit status 1.
class NotFoundError : public Error {
public:
    NotFoundError(const std::string& what, std::string near_miss)
        : Error(what), near_miss_(std::move(near_miss)) {}

    const std::string& near_miss() const noexcept { return near_miss_; }

private:
    std::string near_miss_;
};

}  // namespace geoindex
