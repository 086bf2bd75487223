#pragma once

#include <stdexcept>
#include <string>

namespace cvclone {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad dimension, out-of-range mode, duplicate index, parameter outside its domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A covariance matrix that violates the uncertainty principle, or an input
// pair of variances that would produce one.
class PhysicalityError : public Error {
public:
    using Error::Error;
};

// Division by a vanishing variance during conditioning.
class SingularityError : public Error {
public:
    using Error::Error;
};

// Gain ratio requested for an input amplitude too small to define it.
class UndefinedGainError : public Error {
public:
    using Error::Error;
};

}  // namespace cvclone
