#pragma once

#include <stdexcept>
#include <string>

namespace aremos {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad inputs: schema violations, precondition failures, malformed data.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Numerical failures: singular systems, non-convergence, degenerate inputs.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Filesystem and parsing failures, carrying path/line context in the message.
class IoError : public Error {
public:
    using Error::Error;
};

/// A series whose sample variance is zero cannot support an AR fit.
class DegenerateSeriesError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Fewer past errors supplied than the AR order requires.
class InsufficientHistoryError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

}  // namespace aremos
