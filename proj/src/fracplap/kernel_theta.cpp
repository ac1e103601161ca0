#include "fracplap/kernel_theta.hpp"

#include <cmath>
#include <string>

#include "fracplap/specfun.hpp"

namespace fracplap::kernel {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double alpha_n(int n) {
    if (n < 2) throw domain_error("alpha_n: requires N >= 2, got " + std::to_string(n));
    return std::pow(kPi, 0.5 * (n - 3)) / specfun::gamma_fn(0.5 * (n - 1));
}

double k_theta(double rho, const FracParams& params, const quadrature::QuadratureSpec& spec) {
    if (!(rho >= 0.0)) throw domain_error("k_theta: requires rho >= 0");
    if (std::fabs(rho - 1.0) < 1e-12)
        throw domain_error("k_theta: the angular integral is non-integrable at rho = 1");

    double expo = 0.5 * (params.n + params.sp());
    int nm2 = params.n - 2;
    // 1 - 2 rho cos(theta) + rho^2 = (1-rho)^2 + 4 rho sin^2(theta/2),
    // which stays accurate when rho is close to 1.
    double base = (1.0 - rho) * (1.0 - rho);
    auto integrand = [&](double theta) {
        double s = std::sin(0.5 * theta);
        double denom = base + 4.0 * rho * s * s;
        double v = std::pow(denom, -expo);
        if (nm2 != 0) v *= std::pow(std::sin(theta), nm2);
        return v;
    };

    if (std::fabs(rho - 1.0) > 0.1) {
        return quadrature::integrate_adaptive(integrand, 0.0, kPi, spec).value;
    }
    // Peaked near theta = 0: integrate [0, 1/2] in theta = u^2, rest as is.
    auto graded = [&](double u) { return 2.0 * u * integrand(u * u); };
    double left = quadrature::integrate_adaptive(graded, 0.0, std::sqrt(0.5), spec).value;
    double right = quadrature::integrate_adaptive(integrand, 0.5, kPi, spec).value;
    return left + right;
}

}  // namespace fracplap::kernel
