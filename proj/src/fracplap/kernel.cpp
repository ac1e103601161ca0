#include "fracplap/kernel.hpp"

#include <cmath>
#include <string>

#include "fracplap/specfun.hpp"

namespace fracplap::kernel {

KernelEvaluator::KernelEvaluator(const FracParams& params, const quadrature::QuadratureSpec& spec)
    : params_(params), spec_(spec), alpha_n_(kernel::alpha_n(params.n)),
      h_limit_(specfun::h_limit(params)) {
    spec_.validate();
}

double KernelEvaluator::k(double rho) const {
    if (!(rho >= 0.0)) throw domain_error("KernelEvaluator::k: requires rho >= 0");
    if (std::fabs(rho - 1.0) < 1e-12)
        throw domain_error("KernelEvaluator::k: rho = 1 excluded; use H for the near-1 behaviour");
    if (rho < 1.0) return specfun::g_eval(rho * rho, params_);
    return specfun::g_eval(1.0 / (rho * rho), params_) * std::pow(rho, -(params_.n + params_.sp()));
}

}  // namespace fracplap::kernel
