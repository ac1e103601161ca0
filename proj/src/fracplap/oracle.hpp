#pragma once

#include "fracplap/profile.hpp"
#include "fracplap/quadrature.hpp"

namespace fracplap::oracle {

// Brute-force validation path at N = 2: the defining principal-value integral
// evaluated in polar coordinates with the angular factor obtained by direct
// theta-quadrature (kernel::k_theta) and the eps -> 0 limit taken by
// pv_limit extrapolation. Deliberately never touches the closed-form kernel
// or the hypergeometric code (this file includes kernel_theta only).

// 2 PV int_{R^2} Psi_p(1 - |y|^beta) / |e1 - y|^{2+sp} dy  =  C(beta) at N=2.
double c_beta_direct_2d(double s, double p, double beta, const quadrature::QuadratureSpec& spec);

// The same machinery for an arbitrary radial profile at radius r.
double operator_direct_2d(const profile::RadialProfile& f, double r, double s, double p,
                          const quadrature::QuadratureSpec& spec);

}  // namespace fracplap::oracle
