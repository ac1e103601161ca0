#pragma once

#include <stdexcept>
#include <string>

namespace fracplap {

// Error taxonomy mirrored by the C API status codes (see include/fracplap.h).

// Invalid parameter or input outside the mathematical domain of an operation.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A precondition on state/geometry (e.g. evaluation radius inside a
// breakpoint guard band) rather than on a raw value.
class precondition_error : public domain_error {
public:
    explicit precondition_error(const std::string& what) : domain_error(what) {}
};

// An iterative scheme failed to converge (series, bisection, extrapolation).
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive quadrature exhausted its subdivision budget. Carries the best
// estimate so callers can decide whether it is still usable.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double value, double err_est)
        : std::runtime_error(what), value(value), err_est(err_est) {}
    double value;
    double err_est;
};

// An integrand produced NaN/Inf; the offending abscissa is reported.
class integrand_error : public std::runtime_error {
public:
    integrand_error(const std::string& what, double abscissa)
        : std::runtime_error(what), abscissa(abscissa) {}
    double abscissa;
};

// Result overflow (e.g. gamma beyond the double range).
class range_error : public std::runtime_error {
public:
    explicit range_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fracplap
