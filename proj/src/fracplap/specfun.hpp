#pragma once

#include "fracplap/params.hpp"

namespace fracplap::specfun {

// Euler gamma function. Lanczos approximation with reflection for x < 0.5.
// Poles (x a non-positive integer) raise domain_error; x beyond the double
// overflow threshold raises range_error naming the threshold.
double gamma_fn(double x);

// log |Gamma(x)| for x not a non-positive integer.
double lgamma_fn(double x);

// Digamma psi(x) = Gamma'(x)/Gamma(x), x not a non-positive integer.
double digamma_fn(double x);

// 1/Gamma(x); exactly 0 at the poles of Gamma.
double rgamma_fn(double x);

// B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), a,b > 0, computed in log space.
double beta_fn(double a, double b);

struct HyperParams {
    double a;
    double b;
    double c;
};

// Gauss hypergeometric 2F1(a,b;c;t) for t in [0,1).
//
// t <= 1/2: direct Gauss series. t > 1/2: connection formula in powers of
// (1-t); when c-a-b is within 1e-9 of an integer the logarithmic variant is
// used (the generic two-branch formula has a Gamma pole there).
double hyp2f1(double a, double b, double c, double t);
inline double hyp2f1(const HyperParams& hp, double t) { return hyp2f1(hp.a, hp.b, hp.c, t); }

// The paper's 2F1 parameters for a given (N, ps):
// a = (N+ps)/2, b = (ps+2)/2, c = N/2, so c-a-b = -1-ps.
HyperParams g_hyper_params(const FracParams& params);

// G(t) = B((N-1)/2, 1/2) * 2F1((N+ps)/2, (ps+2)/2; N/2; t), t in [0,1).
// Blows up like (1-t)^{-1-ps} as t -> 1.
//
// perturb_ps nudges ps by a relative 1e-9 before evaluating; debugging aid
// for the integer-exponent dispatch, never used in the main path.
double g_eval(double t, const FracParams& params, bool perturb_ps = false);

// H(rho) = (1-rho)^{1+ps} G(rho^2), finite on all of [0,1]. At rho = 1 the
// connection-formula limit is returned, never a naive product.
double h_eval(double rho, const FracParams& params);

// Same as h_eval but parametrized by w = 1-rho, which callers that integrate
// up to the endpoint can supply exactly (avoids reconstructing 1-rho from a
// rounded rho). Valid for w in [0,1].
double h_eval_w(double w, const FracParams& params);

// lim_{rho->1^-} H(rho) = B((N-1)/2,1/2) * Gamma(N/2)Gamma(1+ps) /
// (Gamma((N+ps)/2)Gamma((ps+2)/2)) * 2^{-(1+ps)}.
double h_limit(const FracParams& params);

}  // namespace fracplap::specfun
