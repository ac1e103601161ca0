#pragma once

#include <vector>

#include "fracplap/fundamental.hpp"
#include "fracplap/kernel.hpp"
#include "fracplap/profile.hpp"

namespace fracplap::radial {

enum class Mode { Truncated, PrincipalValue };

struct OperatorValue {
    double value = 0.0;
    double err_est = 0.0;
    double r = 0.0;
    Mode mode = Mode::PrincipalValue;
    double eps = 0.0;  // Truncated mode only
};

// Truncated operator
//   J_eps f(r) = 4 pi alpha_N r^{-sp} [ int_0^{1-eps/r} Psi_p(f(r)-f(r rho)) rho^{N-1} G(rho^2) drho
//                                     + int_0^{r/(r+eps)} Psi_p(f(r)-f(r/rho)) rho^{ps-1} G(rho^2) drho ],
// the rho > 1 half folded onto (0,1) through the kernel reflection law.
OperatorValue frac_plap_radial_jeps(const profile::RadialProfile& f, double r, double eps,
                                    const kernel::KernelEvaluator& ke,
                                    const quadrature::QuadratureSpec& spec);

// Principal value by the folded form: the inner and outer integrands are
// combined before integration, so the leading (1-rho)^{p-1} parts cancel and
// the rho -> 1 endpoint carries the integrable exponent p(1-s)-1, handled by
// the graded rule against H. Requires r at least 1e-6*r away from every
// profile breakpoint. With spec.dual_path set, the result is cross-checked
// against the J_eps extrapolation route.
OperatorValue frac_plap_radial_pv(const profile::RadialProfile& f, double r,
                                  const kernel::KernelEvaluator& ke,
                                  const quadrature::QuadratureSpec& spec);

struct FundamentalRow {
    double r = 0.0;
    double pv = 0.0;
    double pv_err = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    bool pass = false;
};

struct FundamentalReport {
    double beta = 0.0;
    double c_value = 0.0;
    double c_err = 0.0;
    double rhs_exponent = 0.0;
    fundamental::Sign predicted_sign = fundamental::Sign::Zero;
    bool zero_mode = false;     // |C| indistinguishable from 0: absolute residuals
    double zero_floor = 0.0;    // the scale used for residuals in zero mode (at r=1)
    double tolerance = 0.0;
    std::vector<FundamentalRow> rows;
    bool pass = false;
};

// Per-radius check of (-Delta_p)^s v_beta = C(beta) |x|^{beta(p-1)-sp}.
FundamentalReport verify_fundamental_identity(const FracParams& params, double beta,
                                              const std::vector<double>& radii,
                                              const quadrature::QuadratureSpec& spec,
                                              double tolerance = 1e-3);

struct LogRow {
    double r = 0.0;
    double pv = 0.0;
    double pv_err = 0.0;
    double scale = 0.0;  // r^{-sp}
    double ratio = 0.0;  // |pv| / scale
    bool pass = false;
};

struct LogReport {
    double tolerance = 0.0;
    std::vector<LogRow> rows;
    bool pass = false;
};

// Per-radius check of (-Delta_p)^s log|x| = 0 when ps = N, against the local
// scale r^{-sp}.
LogReport verify_log_harmonic(const FracParams& params, const std::vector<double>& radii,
                              const quadrature::QuadratureSpec& spec, double tolerance = 1e-5);

}  // namespace fracplap::radial
