#pragma once

#include <stdexcept>
#include <string>

namespace ktm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inputs violate a documented precondition (bad sizes, dimensions, ranges).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Special-function argument outside the supported domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature could not reach the requested tolerance.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double achieved)
        : Error(what + " (achieved error estimate " + std::to_string(achieved) + ")"),
          achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// File or stream failures in the grid/plan formats.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace ktm
