#pragma once

#include <stdexcept>
#include <string>

namespace fdm {

// Configuration and input problems map to exit code 2 in the CLI,
// NumericError and its subclasses to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

// Supplied overlap data that is not symmetric under the Legendre scaling.
class SymmetryError : public FormatError {
public:
    using FormatError::FormatError;
};

class IoError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

class PoleError : public NumericError {
public:
    using NumericError::NumericError;
};

class PrecisionError : public NumericError {
public:
    using NumericError::NumericError;
};

class DomainError : public NumericError {
public:
    using NumericError::NumericError;
};

class SingularGapError : public NumericError {
public:
    using NumericError::NumericError;
};

class DivergenceError : public NumericError {
public:
    using NumericError::NumericError;
};

class QuadratureError : public NumericError {
public:
    using NumericError::NumericError;
};

} // namespace fdm
