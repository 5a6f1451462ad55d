#ifndef HEUNINT_ERRORS_HPP
#define HEUNINT_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace heunint {

// Evaluation outside a function's stated domain (singular point, bad branch
// point, zero divisor in a series ring, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// An iterative scheme ran out of budget. Carries the best estimate obtained
// so far, so callers may still report a degraded value.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg,
                              std::complex<double> best = {},
                              double err = 0.0)
        : std::runtime_error(msg), best_estimate(best), err_estimate(err) {}
    std::complex<double> best_estimate;
    double err_estimate;
};

// The exponent-zero series normalization is undefined: the factor multiplying
// the new coefficient in the n-th recurrence equation vanishes.
struct ResonanceError : std::domain_error {
    ResonanceError(const std::string& msg, int index)
        : std::domain_error(msg), index(index) {}
    int index;
};

// A parameter tie or case selection required by a formula is violated.
struct ConstraintError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// instantiate() refused to bind an identity instance.
struct InvalidInstance : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace heunint

#endif
