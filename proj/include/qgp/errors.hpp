#pragma once

#include <stdexcept>
#include <string>

namespace qgp {

// Bad input: out-of-range parameters, malformed grids, non-finite data.
// The CLI maps this family to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParameterError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Box too short for the soliton tail. Carries the smallest acceptable half-length.
class TruncationError : public ValidationError {
public:
    TruncationError(const std::string& what, double suggested_half_length)
        : ValidationError(what), suggested_half_length_(suggested_half_length) {}

    double suggested_half_length() const noexcept { return suggested_half_length_; }

private:
    double suggested_half_length_;
};

// Failure inside a numerical procedure (non-convergence, breakdown).
// The CLI maps this family to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 1 - eta <= 0 somewhere: the hydrodynamical variables stop making sense.
class FrameError : public NumericalError {
public:
    FrameError(const std::string& what, double x) : NumericalError(what), x_(x) {}

    double position() const noexcept { return x_; }

private:
    double x_;
};

}  // namespace qgp
