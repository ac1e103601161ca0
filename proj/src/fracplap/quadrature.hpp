#pragma once

#include <functional>
#include <vector>

#include "fracplap/errors.hpp"

namespace fracplap::quadrature {

// Tolerances, budgets and the principal-value epsilon schedule used by every
// integral in the library.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 2000;
    // 0 = derive the endpoint grading from the singular exponent (the normal
    // mode); a positive value forces that substitution power instead.
    double grading_exponent = 0.0;
    // Strictly decreasing truncation radii for principal-value extrapolation.
    std::vector<double> pv_epsilons = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    // When set, principal-value operator evaluations also run the J_eps
    // extrapolation route and cross-check the folded result against it.
    bool dual_path = false;

    void validate() const;
};

struct IntegralResult {
    double value = 0.0;
    double err_est = 0.0;
    int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss(7)-Kronrod(15) on [a,b]. The error estimate is the sum of
// per-interval |K15 - G7| differences. Throws integrand_error on NaN/Inf,
// accuracy_error (carrying the best estimate) when the subdivision budget is
// exhausted before max(abs_tol, rel_tol*|value|) is met.
IntegralResult integrate_adaptive(const Integrand& f, double a, double b, const QuadratureSpec& spec);

// Same, with interior split points seeded into the initial partition
// (breakpoint images, known kinks). Points outside (a,b) are ignored.
IntegralResult integrate_adaptive(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                                  std::vector<double> splits);

// integral_a^b f_regular(rho) * (b-rho)^lambda drho for lambda in (-1,inf),
// f_regular bounded and continuous at b. Uses the substitution
// b - rho = t^{1/(1+lambda)} and then integrate_adaptive.
IntegralResult integrate_endpoint_singular(const Integrand& f_regular, double a, double b, double lambda,
                                           const QuadratureSpec& spec);

// Core graded rule: integral_0^W g(w) w^lambda dw, with g evaluated directly
// in the small variable w so callers keep full precision at the endpoint.
IntegralResult integrate_graded(const Integrand& g_of_w, double W, double lambda,
                                const QuadratureSpec& spec);

// Extrapolates J(eps) -> lim_{eps->0+} over spec.pv_epsilons. The convergence
// exponent is estimated from successive difference ratios (the rates vary
// with (p,s), so no fixed-order scheme), then Richardson-eliminated, at most
// twice. err_est is the spread of the last two extrapolants. Throws
// convergence_error with the J table when the sequence diverges.
IntegralResult pv_limit(const std::function<double(double)>& J, const QuadratureSpec& spec);

}  // namespace fracplap::quadrature
