#pragma once

#include <stdexcept>
#include <string>

namespace driftlab {

/// Dimension argument below the supported minimum (N >= 2).
class InvalidDimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operation evaluated at the pole r = 0 where the radial coefficient is singular.
class PoleSingularityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Quadrature failed to reach the requested tolerance within its evaluation
/// budget. Carries the best estimate obtained so far.
class ToleranceNotMetError : public std::runtime_error {
public:
    ToleranceNotMetError(const std::string& what, double best_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate) {}
    double best_estimate() const { return best_estimate_; }

private:
    double best_estimate_;
};

/// Hypothesis-check grid too coarse or too short.
class InsufficientGridError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Integrability exponent p outside its admissible range (p > 1).
class InvalidExponentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The assembled finite-difference system is singular.
class DiscretizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or non-finite input data.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A quantity that must be internally consistent (e.g. monotone volumes) is not.
class InternalConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical overflow that survived rescaling retries.
class IntegratorOverflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Plot or table emission requested on an empty data set.
class NoDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem failure (unreadable input, unwritable output).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace driftlab
