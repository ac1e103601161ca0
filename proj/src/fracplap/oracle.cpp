#include "fracplap/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "fracplap/kernel_theta.hpp"

namespace fracplap::oracle {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Truncated radial integral with the rho > 1 half mapped onto (0,1) by the
// substitution rho -> 1/rho in the defining integral (an exact change of
// variables, no kernel identity involved):
//   J(eps) = 4 pi alpha_2 r^{-sp} [ int_0^{1-eps/r} Psi_p(f(r)-f(r rho)) rho K(rho) drho
//                                 + int_0^{r/(r+eps)} Psi_p(f(r)-f(r/rho)) rho^{ps-1} K(rho) drho ]
// with K(rho) the adaptive theta-quadrature.
double j_eps_direct(const profile::RadialProfile& f, double r, double eps, const FracParams& params,
                    const quadrature::QuadratureSpec& spec) {
    double p = params.p, ps = params.sp();
    double fr = f(r);

    // Angular quadrature gets a slightly tighter budget than the radial one.
    quadrature::QuadratureSpec kspec = spec;
    kspec.rel_tol = std::max(1e-12, 0.1 * spec.rel_tol);
    kspec.max_subdivisions = std::max(spec.max_subdivisions, 400);
    auto K = [&](double rho) { return kernel::k_theta(rho, params, kspec); };

    std::vector<double> images;
    for (double bk : f.quadrature_breakpoints()) {
        if (bk <= 0.0) continue;
        if (bk < r) images.push_back(bk / r);
        if (bk > r) images.push_back(r / bk);
    }
    std::sort(images.begin(), images.end());

    auto geometric = [](std::vector<double> base, double hi, double gap) {
        double g = gap;
        for (int k = 0; k < 60; ++k) {
            g *= 2.0;
            if (hi - g <= 0.45) break;
            base.push_back(hi - g);
        }
        return base;
    };

    double inner_lam = 1.0 + std::min(f.head_growth_exponent(), 0.0) * (p - 1.0);
    double outer_lam = ps - 1.0 - std::max(f.tail_growth_exponent(), 0.0) * (p - 1.0);
    if (!(std::min(inner_lam, outer_lam) > -1.0))
        throw domain_error("operator_direct_2d: non-integrable profile at rho = 0");

    auto inner = [&](double rho) { return psi_p(fr - f(r * rho), p) * rho * K(rho); };
    auto outer = [&](double rho) {
        return psi_p(fr - f(r / rho), p) * std::pow(rho, ps - 1.0) * K(rho);
    };

    auto integrate_half = [&](const quadrature::Integrand& g, double hi, double lam,
                              std::vector<double> splits) {
        double lo = 0.0;
        double value = 0.0, err = 0.0;
        if (lam < -1e-9) {
            double v0 = 0.25 * hi;
            for (double s : splits) v0 = std::min(v0, 0.5 * s);
            quadrature::IntegralResult head = quadrature::integrate_graded(
                [&](double v) { return g(v) * std::pow(v, -lam); }, v0, lam, spec);
            value += head.value;
            err += head.err_est;
            lo = v0;
        }
        splits.erase(std::remove_if(splits.begin(), splits.end(),
                                    [&](double s) { return s <= lo || s >= hi; }),
                     splits.end());
        quadrature::IntegralResult body = quadrature::integrate_adaptive(g, lo, hi, spec, splits);
        return std::pair<double, double>(value + body.value, err + body.err_est);
    };

    auto in = integrate_half(inner, 1.0 - eps / r, inner_lam, geometric(images, 1.0 - eps / r, eps / r));
    auto out = integrate_half(outer, r / (r + eps), outer_lam,
                              geometric(images, r / (r + eps), eps / (r + eps)));

    double pref = 4.0 * kPi * kernel::alpha_n(2) * std::pow(r, -ps);
    return pref * (in.first + out.first);
}

}  // namespace

double operator_direct_2d(const profile::RadialProfile& f, double r, double s, double p,
                          const quadrature::QuadratureSpec& spec) {
    FracParams params(2, s, p);
    if (!(r > 0.0)) throw domain_error("operator_direct_2d: requires r > 0");
    if (f.breakpoint_distance(r) < 1e-6)
        throw precondition_error("operator_direct_2d: r inside the breakpoint guard band");
    f.validate_tail(params);
    double cap = std::min(1.0, 0.5 * r);
    quadrature::IntegralResult lim = quadrature::pv_limit(
        [&](double eps) { return j_eps_direct(f, r, eps * cap, params, spec); }, spec);
    return lim.value;
}

double c_beta_direct_2d(double s, double p, double beta, const quadrature::QuadratureSpec& spec) {
    FracParams params(2, s, p);
    params.require_power_case();
    params.require_beta_admissible(beta);
    if (std::fabs(beta) < 1e-10) return 0.0;
    return operator_direct_2d(profile::power_profile(beta), 1.0, s, p, spec);
}

}  // namespace fracplap::oracle
