#pragma once

#include <stdexcept>
#include <string>

namespace muskat {

// Base of every error raised by the library. The CLI maps the subclasses
// below onto process exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Parameters fall outside the window in which the requested object exists.
class RegimeError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class NoBracket : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class MaxIterExceeded : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularJacobian : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StepTooSmall : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ContinuationStall : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InvalidZeta : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class MismatchError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class CflViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NegativeCell : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NegativeInput : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class SupportOutsideDomain : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class NonpositiveTime : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

}  // namespace muskat
