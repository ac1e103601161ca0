#pragma once

#include "fracplap/params.hpp"
#include "fracplap/quadrature.hpp"

namespace fracplap::kernel {

// alpha_N = pi^{(N-3)/2} / Gamma((N-1)/2). N >= 2.
double alpha_n(int n);

// The angular kernel by direct quadrature of
//   K(rho) = integral_0^pi sin^{N-2}(theta) / |1 - 2 rho cos(theta) + rho^2|^{(N+ps)/2} dtheta,
// rho in [0,1) u (1,inf). This path never touches the hypergeometric code;
// it is the independent oracle for the closed form. For rho near 1 the
// left endpoint is handled with the substitution theta = u^2.
double k_theta(double rho, const FracParams& params, const quadrature::QuadratureSpec& spec);

}  // namespace fracplap::kernel
