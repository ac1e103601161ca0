#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracplap/params.hpp"
#include "fracplap/quadrature.hpp"

namespace fracplap::fundamental {

enum class Sign { Zero, Positive, Negative };

const char* sign_name(Sign s);

struct CBetaResult {
    double beta = 0.0;
    double value = 0.0;
    double err_est = 0.0;
    Sign predicted_sign = Sign::Zero;
    double rhs_exponent = 0.0;  // beta(p-1) - sp
};

// The analytic sign chart: zero at beta = 0 and beta = beta_star, positive
// strictly between them, negative otherwise. No quadrature.
Sign c_beta_sign(const FracParams& params, double beta);

// The multiplier constant
//   C(beta) = 4 pi alpha_N integral_0^1 |1-rho^beta|^{p-2}(1-rho^beta)
//             [rho^{N-1} - rho^{ps-beta(p-1)-1}] G(rho^2) drho.
// The rho -> 1 endpoint carries the exponent p(1-s)-1 and is integrated on
// [1/2, 1] through the graded substitution against H; the rho -> 0 endpoint
// gets its own grading when beta(p-1) < 0 pushes the exponent below zero.
// |beta| < 1e-10 is treated as the exact zero (the integrand vanishes
// identically and |1-rho^beta|^{p-2} would otherwise be 0^negative for p<2).
CBetaResult c_beta(const FracParams& params, double beta, const quadrature::QuadratureSpec& spec);

// Brackets and bisects the sign changes of c_beta over the admissible
// interval; the two roots land on 0 and beta_star.
std::pair<double, double> c_beta_zeros(const FracParams& params, const quadrature::QuadratureSpec& spec);

struct SweepEntry {
    double beta = 0.0;
    std::optional<CBetaResult> result;
    std::string error;  // non-empty when this grid point failed
};

// One CBetaResult per grid point, order preserved; per-entry errors are
// collected, not fatal.
std::vector<SweepEntry> c_beta_sweep(const FracParams& params, const std::vector<double>& grid,
                                     const quadrature::QuadratureSpec& spec);

}  // namespace fracplap::fundamental
