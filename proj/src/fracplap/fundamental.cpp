#include "fracplap/fundamental.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fracplap/kernel_theta.hpp"
#include "fracplap/parallel.hpp"
#include "fracplap/specfun.hpp"

namespace fracplap::fundamental {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

const char* sign_name(Sign s) {
    switch (s) {
        case Sign::Zero: return "Zero";
        case Sign::Positive: return "Positive";
        case Sign::Negative: return "Negative";
    }
    return "?";
}

Sign c_beta_sign(const FracParams& params, double beta) {
    params.require_power_case();
    params.require_beta_admissible(beta);
    double bs = params.beta_star();
    double tol = 1e-12 * std::max(1.0, std::fabs(bs));
    if (std::fabs(beta) < tol || std::fabs(beta - bs) < tol) return Sign::Zero;
    if (beta > std::min(bs, 0.0) && beta < std::max(bs, 0.0)) return Sign::Positive;
    return Sign::Negative;
}

CBetaResult c_beta(const FracParams& params, double beta, const quadrature::QuadratureSpec& spec) {
    params.require_power_case();
    double p = params.p, ps = params.sp();
    int N = params.n;
    double rhs_exponent = beta * (p - 1.0) - ps;
    if (std::fabs(beta) < 1e-10) {
        params.require_beta_admissible(beta);
        return {beta, 0.0, 0.0, Sign::Zero, rhs_exponent};
    }
    params.require_beta_admissible(beta);

    double b2 = ps - beta * (p - 1.0) - 1.0;  // second bracket exponent
    double bracket_rate = static_cast<double>(N - 1) - b2;  // = N - ps + beta(p-1)

    // Right panel [1/2, 1]: integrand = f_reg(w) * w^{p(1-s)-1} with
    // f_reg assembled from ratios that stay O(1) as w -> 0.
    auto f_reg = [&](double w) {
        double L = std::log1p(-w);
        double x = std::expm1(beta * L);       // rho^beta - 1
        double psi_ratio = -std::copysign(std::pow(std::fabs(x) / w, p - 1.0), x);
        double bracket_ratio = std::pow(1.0 - w, b2) * std::expm1(bracket_rate * L) / w;
        return psi_ratio * bracket_ratio * specfun::h_eval_w(w, params);
    };
    double lambda = p * (1.0 - params.s) - 1.0;
    quadrature::IntegralResult right = quadrature::integrate_graded(f_reg, 0.5, lambda, spec);

    // Left panel [0, 1/2]: guarded form, with its own grading when the
    // rho -> 0 exponent is negative.
    quadrature::IntegralResult left;
    if (beta < 0.0) {
        // integrand = Psi_p(rho^{-beta} - 1) [rho^{e1} - rho^{e2}] G(rho^2),
        // e1 = N-1+beta(p-1), e2 = ps-1.
        double e1 = N - 1.0 + beta * (p - 1.0);
        double e2 = ps - 1.0;
        double lam0 = std::min(e1, e2);
        auto g_left = [&](double rho) {
            double y = std::pow(rho, -beta) - 1.0;  // < 0 near 0
            double G = specfun::g_eval(rho * rho, params);
            return psi_p(y, p) * (std::pow(rho, e1 - lam0) - std::pow(rho, e2 - lam0)) * G;
        };
        if (lam0 < 0.0)
            left = quadrature::integrate_graded(g_left, 0.5, lam0, spec);
        else
            left = quadrature::integrate_adaptive([&](double rho) { return g_left(rho) * std::pow(rho, lam0); },
                                                  0.0, 0.5, spec);
    } else {
        double e1 = N - 1.0;
        double e2 = b2;
        double lam0 = std::min(e1, e2);
        auto g_left = [&](double rho) {
            double G = specfun::g_eval(rho * rho, params);
            return psi_p(1.0 - std::pow(rho, beta), p) *
                   (std::pow(rho, e1 - lam0) - std::pow(rho, e2 - lam0)) * G;
        };
        if (lam0 < 0.0)
            left = quadrature::integrate_graded(g_left, 0.5, lam0, spec);
        else
            left = quadrature::integrate_adaptive([&](double rho) { return g_left(rho) * std::pow(rho, lam0); },
                                                  0.0, 0.5, spec);
    }

    double pref = 4.0 * kPi * kernel::alpha_n(N);
    CBetaResult out;
    out.beta = beta;
    out.value = pref * (left.value + right.value);
    out.err_est = pref * (left.err_est + right.err_est);
    out.predicted_sign = c_beta_sign(params, beta);
    out.rhs_exponent = rhs_exponent;
    return out;
}

std::pair<double, double> c_beta_zeros(const FracParams& params, const quadrature::QuadratureSpec& spec) {
    params.require_power_case();
    double lo = params.beta_min(), hi = params.beta_max();
    double width = hi - lo;
    const int n = 41;
    std::vector<double> bs(n), vals(n);
    for (int i = 0; i < n; ++i) bs[i] = lo + width * (i + 0.5) / n;
    parallel::parallel_for(n, [&](int i) { vals[i] = c_beta(params, bs[i], spec).value; });

    auto bisect = [&](double a, double b, double fa) {
        for (int it = 0; it < 80 && (b - a) > 1e-9 * std::max(1.0, std::fabs(a) + std::fabs(b)); ++it) {
            double m = 0.5 * (a + b);
            double fm = c_beta(params, m, spec).value;
            if ((fm > 0) == (fa > 0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };

    std::vector<double> roots;
    for (int i = 0; i + 1 < n && roots.size() < 2; ++i) {
        if ((vals[i] > 0) != (vals[i + 1] > 0)) roots.push_back(bisect(bs[i], bs[i + 1], vals[i]));
    }
    if (roots.size() != 2) {
        std::string table = "c_beta_zeros: expected two sign changes, sampled signs:";
        for (int i = 0; i < n; ++i) {
            char row[48];
            std::snprintf(row, sizeof row, " (%.4f:%+d)", bs[i], vals[i] > 0 ? 1 : -1);
            table += row;
        }
        throw convergence_error(table);
    }
    return {roots[0], roots[1]};
}

std::vector<SweepEntry> c_beta_sweep(const FracParams& params, const std::vector<double>& grid,
                                     const quadrature::QuadratureSpec& spec) {
    std::vector<SweepEntry> out(grid.size());
    parallel::parallel_for(static_cast<int>(grid.size()), [&](int i) {
        out[i].beta = grid[i];
        try {
            out[i].result = c_beta(params, grid[i], spec);
        } catch (const std::exception& e) {
            out[i].error = e.what();
        }
    });
    return out;
}

}  // namespace fracplap::fundamental
