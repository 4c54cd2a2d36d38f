#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation at (or numerically on top of) a pole.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Input outside the supported parameter envelope.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Mathematically invalid input (wrong discriminant sign, non-fundamental, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Requested tolerance could not be reached within the work budget.
class AccuracyError : public Error {
public:
    using Error::Error;
};

/// A series was asked to converge outside its half-plane of convergence.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Work or memory cap exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

}  // namespace hecke
