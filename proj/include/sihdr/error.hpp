#pragma once

#include <stdexcept>
#include <string>

namespace sihdr {

/// Input raster or argument violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A tunable (lambda, alpha, gamma, ...) is outside its legal range.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but carries no usable signal (e.g. an all-zero plane).
class DegenerateInput : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class SolverFailure : public std::runtime_error {
public:
    SolverFailure(const std::string& what, double residual, int iterations)
        : std::runtime_error(what), residual_(residual), iterations_(iterations)
    {
    }

    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File exists but its contents are not a format we decode.
class UnsupportedFormat : public IoError {
public:
    using IoError::IoError;
};

class TruncatedFile : public IoError {
public:
    using IoError::IoError;
};

} // namespace sihdr
