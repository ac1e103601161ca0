#pragma once

#include "fracplap/kernel_theta.hpp"
#include "fracplap/params.hpp"
#include "fracplap/quadrature.hpp"

namespace fracplap::kernel {

// Precomputed machinery for the angular kernel of a fixed (N, ps): the
// dimensional constant alpha_N, the finite H-limit at rho = 1, and the
// quadrature policy. Immutable after construction and shareable across
// threads.
class KernelEvaluator {
public:
    KernelEvaluator(const FracParams& params, const quadrature::QuadratureSpec& spec);

    const FracParams& params() const { return params_; }
    const quadrature::QuadratureSpec& spec() const { return spec_; }
    double alpha_n() const { return alpha_n_; }
    double h_limit() const { return h_limit_; }

    // Closed-form angular kernel:
    //   K(rho) = G(rho^2)              for rho < 1,
    //   K(rho) = G(rho^{-2}) / rho^{N+ps}  for rho > 1.
    // Refuses |rho - 1| < 1e-12; callers needing the rho -> 1 behaviour go
    // through H.
    double k(double rho) const;

    // The x-independent prefactor 4 pi alpha_N of the radial reduction.
    double radial_prefactor() const { return 4.0 * 3.14159265358979323846 * alpha_n_; }

private:
    FracParams params_;
    quadrature::QuadratureSpec spec_;
    double alpha_n_;
    double h_limit_;
};

}  // namespace fracplap::kernel
